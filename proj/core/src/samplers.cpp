#include "attrkit/samplers.hpp"

#include <cmath>

#include "attrkit/rng.hpp"

namespace attrkit {

namespace {

Vec unit_direction(const CounterRng& rng, std::uint64_t i, int dim) {
  // Gaussian direction; resample the (measure-zero) degenerate draw.
  for (std::uint64_t attempt = 0;; ++attempt) {
    Vec v = rng.gaussian_vec(i + attempt * 0x10000001ull, dim);
    const double n = norm(v);
    if (n > 1e-12) return scaled(std::move(v), 1.0 / n);
  }
}

}  // namespace

PointCloud sample_sphere(int dim, double radius, int count, std::uint64_t seed) {
  require(radius > 0.0, "sample_sphere: radius must be positive");
  require(count >= 1, "sample_sphere: count must be >= 1");
  const CounterRng rng = CounterRng(seed).stream("sphere");
  PointCloud cloud(dim);
  for (int i = 0; i < count; ++i)
    cloud.push(scaled(unit_direction(rng, static_cast<std::uint64_t>(i), dim), radius));
  return cloud;
}

PointCloud sample_ball(int dim, double radius, int count, std::uint64_t seed) {
  require(radius > 0.0, "sample_ball: radius must be positive");
  require(count >= 1, "sample_ball: count must be >= 1");
  const CounterRng dir = CounterRng(seed).stream("ball_dir");
  const CounterRng rad = CounterRng(seed).stream("ball_rad");
  PointCloud cloud(dim);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    const double r = radius * std::pow(rad.uniform(u), 1.0 / dim);
    cloud.push(scaled(unit_direction(dir, u, dim), r));
  }
  return cloud;
}

PointCloud sample_annulus(int dim, double r_in, double r_out, int count, std::uint64_t seed) {
  require(r_in > 0.0 && r_out > r_in, "sample_annulus: need 0 < r_in < r_out, got ",
          r_in, ", ", r_out);
  require(count >= 1, "sample_annulus: count must be >= 1");
  const CounterRng dir = CounterRng(seed).stream("annulus_dir");
  const CounterRng rad = CounterRng(seed).stream("annulus_rad");
  const double lo = std::pow(r_in, dim), hi = std::pow(r_out, dim);
  PointCloud cloud(dim);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    double r = std::pow(lo + rad.uniform(u) * (hi - lo), 1.0 / dim);
    r = std::min(std::max(r, r_in), r_out);  // clamp away pow rounding
    cloud.push(scaled(unit_direction(dir, u, dim), r));
  }
  return cloud;
}

PointCloud test_grid(int dim, double extent, int count, std::uint64_t seed) {
  require(extent > 0.0 && count >= 1, "test_grid: bad parameters");
  const CounterRng rng = CounterRng(seed).stream("grid");
  PointCloud cloud(dim);
  cloud.push(zeros(dim));
  // Axis points exercise the coordinate planes; the rest is seeded fill.
  for (int a = 0; a < dim && static_cast<int>(cloud.size()) < count; ++a) {
    Vec p = zeros(dim);
    p[static_cast<std::size_t>(a)] = extent;
    cloud.push(p);
    if (static_cast<int>(cloud.size()) < count) {
      p[static_cast<std::size_t>(a)] = -extent / 2.0;
      cloud.push(p);
    }
  }
  std::uint64_t i = 0;
  while (static_cast<int>(cloud.size()) < count) {
    Vec p(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
      p[static_cast<std::size_t>(j)] =
          extent * rng.symmetric(i * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(j));
    cloud.push(std::move(p));
    ++i;
  }
  return cloud;
}

}  // namespace attrkit
