#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "attrkit/klee.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

namespace {

// A sampled rotation of a compact disk in R^2: a genuine homeomorphism with
// distinct domain and image samples.
SampledSystem rotation_on_disk(double angle, double radius, int count) {
  return SampledSystem::from_map(rotation_map(2, 0, 1, angle),
                                 sample_ball(2, radius, count, 55));
}

std::pair<double, double> block_norms(const Vec& p) {
  const std::size_t n = p.size() / 2;
  Vec x(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n));
  Vec y(p.begin() + static_cast<std::ptrdiff_t>(n), p.end());
  return {norm(x), norm(y)};
}

Vec concat(const Vec& x, const Vec& y) {
  Vec out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

TEST_CASE("compress map: identity inside, halving outside") {
  const MapPtr c = build_compress(0.5, 1.0, 2);
  // c = id on B(0, R*), bitwise.
  for (const Vec& p : sample_ball(2, 0.5, 100, 56).points) CHECK(c->forward(p) == p);
  const Vec far = c->forward({4.0, 0.0});
  CHECK(far[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(far[1] == 0.0);
  // Sampled sup of |c| over B(0,3) is theta(3) = 1.5.
  double sup = 0.0;
  for (const Vec& p : sample_ball(2, 3.0, 1000, 57).points)
    sup = std::max(sup, norm(c->forward(p)));
  CHECK(sup <= 1.5 * (1.0 + 1e-12));
  CHECK_THROWS(build_compress(1.0, 0.5, 2));  // R* >= R
}

TEST_CASE("identity dynamics yield the hand-composed shear/swap map") {
  // With phi = psi = id everywhere: g(x,y) = f2^-1(x, y+x) = (x+y, -y/2).
  const PlainPtr id = identity_plain(2);
  const MapPtr f1 = shear_f1(id);
  const MapPtr f2 = swapscale_f2(id);
  const MapPtr g = compose({f1, f2->inverted()});

  const PointCloud grid = test_grid(4, 2.0, 200, 58);
  for (const Vec& p : grid.points) {
    const Vec out = g->forward(p);
    CHECK(out[0] == doctest::Approx(p[0] + p[2]).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(p[1] + p[3]).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(-p[2] / 2.0).epsilon(1e-15));
    CHECK(out[3] == doctest::Approx(-p[3] / 2.0).epsilon(1e-15));
    // (x, 0) stays (x, 0).
    const Vec fixed = g->forward({p[0], p[1], 0.0, 0.0});
    CHECK(fixed == Vec{p[0], p[1], 0.0, 0.0});
    // Hand-inverted formula.
    CHECK(dist(g->inverse(out), p) <= 1e-12);
  }
}

TEST_CASE("klee extension conjugates f exactly at anchors") {
  const SampledSystem sys = rotation_on_disk(1.0, 0.6, 40);
  const KleeExtension ext = klee_extend(sys, 1.0);
  CHECK(ext.fhat->dim() == 4);
  for (std::size_t i = 0; i < sys.domain.size(); ++i) {
    const Vec in = concat(sys.domain.points[i], {0.0, 0.0});
    const Vec expect = concat(sys.image.points[i], {0.0, 0.0});
    CHECK(ext.fhat->forward(in) == expect);
  }
}

TEST_CASE("klee extension keeps B(0,r) x B(0,r) invariant for r >= R") {
  const SampledSystem sys = rotation_on_disk(0.7, 0.6, 30);
  const KleeExtension ext = klee_extend(sys, 1.0);
  for (double r : {1.0, 2.0, 4.0}) {
    const PointCloud xs = sample_ball(2, r, 500, 59);
    const PointCloud ys = sample_ball(2, r, 500, 60);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto [bx, by] = block_norms(ext.fhat->forward(concat(xs.points[i], ys.points[i])));
      CHECK(bx <= r + 1e-9);
      CHECK(by <= r + 1e-9);
    }
  }
}

TEST_CASE("the proof's block-norm chain holds sample-wise") {
  const SampledSystem sys = rotation_on_disk(1.0, 0.6, 30);
  const KleeExtension ext = klee_extend(sys, 1.0);
  for (double r : {1.0, 2.0}) {
    const PointCloud xs = sample_ball(2, r, 500, 61);
    const PointCloud ys = sample_ball(2, r, 500, 62);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Vec in = concat(xs.points[i], ys.points[i]);
      const auto [f1x, f1y] = block_norms(ext.f1->forward(in));
      CHECK(f1x <= r + 1e-9);
      CHECK(f1y <= 2.0 * r + 1e-9);
      const auto [gx, gy] = block_norms(ext.g->forward(in));
      CHECK(gx <= 2.0 * r + 1e-9);
      CHECK(gy <= 2.0 * r + 1e-9);
      const auto [fx, fy] = block_norms(ext.fhat->forward(in));
      CHECK(fx <= r + 1e-9);
      CHECK(fy <= r + 1e-9);
    }
  }
}

TEST_CASE("klee inverse is the exact compositional inverse") {
  const SampledSystem sys = rotation_on_disk(0.9, 0.6, 30);
  const KleeExtension ext = klee_extend(sys, 1.0);

  // chat^-1 o chat = id on a grid.
  const PointCloud grid4 = test_grid(4, 2.0, 500, 63);
  CHECK(max_roundtrip_error(*ext.chat, grid4.points) <= 1e-12);

  for (const Vec& p : grid4.points) {
    CHECK(dist(klee_inverse_eval(ext, ext.fhat->forward(p)), p) <= 1e-9);
    CHECK(dist(ext.fhat->forward(klee_inverse_eval(ext, p)), p) <= 1e-9);
  }
}

TEST_CASE("klee rejects systems escaping the extension region") {
  SampledSystem sys = rotation_on_disk(0.5, 0.95, 20);  // too close to R
  CHECK_THROWS(klee_extend(sys, 1.0));
}

TEST_CASE("klee serialization carries the component maps") {
  const SampledSystem sys = rotation_on_disk(0.4, 0.6, 20);
  const KleeExtension ext = klee_extend(sys, 1.0);
  const nlohmann::json j = klee_to_json(ext);
  CHECK(j.at("n") == 2);
  CHECK(j.at("R_star").get<double>() > 0.6);
  CHECK(j.contains("phi"));
  CHECK(j.contains("psi"));
  CHECK(j.contains("compress"));
}
