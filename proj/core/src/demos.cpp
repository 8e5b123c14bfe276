#include "attrkit/demos.hpp"

#include <cmath>

#include "attrkit/rng.hpp"

namespace attrkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec pattern_vec(int dim, std::uint64_t tag) {
  const CounterRng rng = CounterRng(0xDE305ull).stream(tag);
  Vec v(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = rng.gaussian(static_cast<std::uint64_t>(i));
  return v;
}

Vec unit_pattern(int dim, std::uint64_t tag) {
  Vec v = pattern_vec(dim, tag);
  return scaled(std::move(v), 1.0 / norm(v));
}

// translate(center) o inner o translate(-center)
MapPtr centered(MapPtr inner, const Vec& center) {
  const int dim = inner->dim();
  return compose({affine_map(Mat::identity(dim), scaled(Vec(center), -1.0)), std::move(inner),
                  affine_map(Mat::identity(dim), center)});
}

DemoSystem make_linear_contraction(const nlohmann::json& params, const std::string& name) {
  DemoSystem d;
  d.name = name;
  d.description = "single attracting fixed point of an affine contraction";
  d.ambient_dim = params.value("dim", 7);
  d.k = 0;
  const double lambda = params.value("lambda", 0.5);
  require(lambda > 0.0 && lambda < 1.0, "linear_contraction: lambda must be in (0,1)");
  Vec center = params.contains("center") ? params.at("center").get<Vec>()
                                         : scaled(pattern_vec(d.ambient_dim, 11), 0.6);
  require(static_cast<int>(center.size()) == d.ambient_dim, "linear_contraction: bad center");

  Mat a = Mat::identity(d.ambient_dim);
  for (int i = 0; i < d.ambient_dim; ++i) a.at(i, i) = lambda;
  d.map = affine_map(std::move(a), scaled(Vec(center), 1.0 - lambda));

  d.attractor_samples = PointCloud(d.ambient_dim);
  d.attractor_samples.push(center);
  d.shape = FlatShape{0, {}, center, 0.0};
  d.pipeline_ready = true;
  return d;
}

DemoSystem make_arc_morse(const nlohmann::json& params) {
  DemoSystem d;
  d.name = "arc_morse";
  d.description = "arc with Morse (north-south style) dynamics: endpoints attract, midpoint repels";
  d.ambient_dim = params.value("dim", 9);
  d.k = 1;
  const double lambda = params.value("lambda", 0.5);
  const int count = params.value("samples", 81);
  require(count >= 3, "arc_morse: need at least 3 samples");
  require(lambda > 0.0 && lambda < 1.0, "arc_morse: lambda must be in (0,1)");

  const Vec u = unit_pattern(d.ambient_dim, 21);
  const Vec center = scaled(pattern_vec(d.ambient_dim, 22), 0.4);

  // Transverse contraction toward the u-axis: lambda*I + (1-lambda) u u^T.
  Mat m(d.ambient_dim, d.ambient_dim);
  for (int i = 0; i < d.ambient_dim; ++i) {
    for (int j = 0; j < d.ambient_dim; ++j)
      m.at(i, j) = (1.0 - lambda) * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
    m.at(i, i) += lambda;
  }
  // On-arc profile: fixes 0 and 1, pushes the interior outward, contracts
  // radii beyond 1 back toward the arc.
  RadialProfile arc_profile({{0.3, 0.5}, {1.0, 1.0}}, 0.5);
  d.map = centered(compose({linear_map(std::move(m)), radial_map(std::move(arc_profile), d.ambient_dim)}),
                   center);

  d.attractor_samples = PointCloud(d.ambient_dim);
  for (int i = 0; i < count; ++i) {
    const double t = -1.0 + 2.0 * i / (count - 1);
    d.attractor_samples.push(axpy(Vec(center), t, u));
  }
  d.shape = FlatShape{1, {u}, center, 1.0};
  d.pipeline_ready = true;
  return d;
}

DemoSystem make_disk_rotation(const nlohmann::json& params) {
  DemoSystem d;
  d.name = "disk_rotation";
  d.description = "rigid rotation of a 2-disk, transverse and radial contraction outside";
  d.ambient_dim = params.value("dim", 20);
  d.k = 2;
  const double angle = params.value("angle", 1.0);
  const double lambda = params.value("lambda", 0.5);
  const int rings = params.value("rings", 6);
  const int per_ring = params.value("per_ring", 40);
  require(d.ambient_dim >= 3, "disk_rotation: ambient dimension must be >= 3");
  require(lambda > 0.0 && lambda < 1.0, "disk_rotation: lambda must be in (0,1)");

  const Vec v1 = unit_pattern(d.ambient_dim, 31);
  Vec v2_raw = pattern_vec(d.ambient_dim, 32);
  const double v2_proj = dot(v2_raw, v1);
  v2_raw = axpy(std::move(v2_raw), -v2_proj, v1);
  const double v2_norm = norm(v2_raw);
  const Vec v2 = scaled(std::move(v2_raw), 1.0 / v2_norm);
  const Vec center = scaled(pattern_vec(d.ambient_dim, 33), 0.3);

  // Frame rows: v1, v2, completion; as a map, frame coords -> ambient is Q^T.
  const Mat q = orthonormal_completion({v1, v2}, d.ambient_dim);
  const Mat qt = transpose(q);

  // In-plane: rigid rotation inside the unit disk (identity radial profile
  // there, bitwise), radial pull toward the disk outside.
  MapPtr in_plane = compose({radial_map(RadialProfile({{1.0, 1.0}}, 0.5), 2),
                             rotation_map(2, 0, 1, angle)});
  Mat shrink = Mat::identity(d.ambient_dim - 2);
  for (int i = 0; i < d.ambient_dim - 2; ++i) shrink.at(i, i) = lambda;
  MapPtr frame_action = block_product({std::move(in_plane), linear_map(std::move(shrink))});
  d.map = centered(compose({linear_map(q), std::move(frame_action), linear_map(qt)}), center);

  d.attractor_samples = PointCloud(d.ambient_dim);
  d.attractor_samples.push(center);
  for (int r = 1; r <= rings; ++r) {
    const double radius = static_cast<double>(r) / rings;
    for (int a = 0; a < per_ring; ++a) {
      const double th = 2.0 * kPi * a / per_ring;
      Vec p = axpy(Vec(center), radius * std::cos(th), v1);
      d.attractor_samples.push(axpy(std::move(p), radius * std::sin(th), v2));
    }
  }
  d.shape = FlatShape{2, {v1, v2}, center, 1.0};
  d.pipeline_ready = true;
  return d;
}

DemoSystem make_circle_attractor(const nlohmann::json& params) {
  DemoSystem d;
  d.name = "circle_attractor";
  d.description = "rotation composed with a radial pull onto the unit circle (omega-limit demo)";
  d.ambient_dim = params.value("dim", 2);
  d.k = 1;
  const double angle = params.value("angle", 1.0);
  require(d.ambient_dim >= 2, "circle_attractor: ambient dimension must be >= 2");

  RadialProfile pull({{0.5, 0.75}, {1.0, 1.0}}, 0.5);
  d.map = compose({radial_map(std::move(pull), d.ambient_dim),
                   rotation_map(d.ambient_dim, 0, 1, angle)});

  const int count = params.value("samples", 64);
  d.attractor_samples = PointCloud(d.ambient_dim);
  for (int i = 0; i < count; ++i) {
    Vec p = zeros(d.ambient_dim);
    p[0] = std::cos(2.0 * kPi * i / count);
    p[1] = std::sin(2.0 * kPi * i / count);
    d.attractor_samples.push(std::move(p));
  }
  d.pipeline_ready = false;  // a circle has nontrivial shape
  return d;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"fixed_point", "arc_morse", "disk_rotation",
                                                 "linear_contraction", "circle_attractor"};
  return names;
}

bool is_demo(const std::string& name) {
  for (const std::string& n : demo_names())
    if (n == name) return true;
  return false;
}

DemoSystem make_demo(const std::string& name, const nlohmann::json& params) {
  if (name == "fixed_point" || name == "linear_contraction")
    return make_linear_contraction(params, name);
  if (name == "arc_morse") return make_arc_morse(params);
  if (name == "disk_rotation") return make_disk_rotation(params);
  if (name == "circle_attractor") return make_circle_attractor(params);
  fail("unknown demo system '", name, "'");
}

SampledSystem demo_system(const DemoSystem& demo) {
  return SampledSystem::from_map(demo.map, demo.attractor_samples);
}

GarayDemo make_garay_demo(const std::string& name) {
  if (name == "point") {
    PointCloud X(2);
    X.push(zeros(2));
    std::vector<double> radii;
    for (int j = 0; j < 14; ++j) radii.push_back(0.9 * std::pow(0.3, j));
    return GarayDemo{name, std::move(X), round_cells(2, 1.0, radii), 1.0,
                     FlatShape{0, {}, zeros(2), 0.0}};
  }
  if (name == "segment") {
    const double L = 0.5;
    PointCloud X(3);
    for (int i = 0; i <= 40; ++i) {
      Vec p = zeros(3);
      p[0] = -L + 2.0 * L * i / 40.0;
      X.push(std::move(p));
    }
    std::vector<double> margins;
    for (int j = 0; j < 14; ++j) margins.push_back((0.9 - L) * std::pow(0.3, j));
    Vec u = zeros(3);
    u[0] = 1.0;
    return GarayDemo{name, std::move(X), flat_ball_cells(3, 1, L, 1.0, margins), 1.0,
                     FlatShape{1, {u}, zeros(3), L}};
  }
  fail("unknown garay demo '", name, "'");
}

}  // namespace attrkit
