#include <doctest.h>

#include <nlohmann/json.hpp>

#include "attrkit/extension.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

namespace {

ExtensionPtr swap_extension_1d() {
  PointCloud anchors(1), values(1);
  anchors.push({-0.5});
  anchors.push({0.5});
  values.push({0.5});
  values.push({-0.5});
  return extend(std::move(anchors), std::move(values), 1.0);
}

}  // namespace

TEST_CASE("extension is the identity outside B(0,R), bitwise") {
  const ExtensionPtr op = swap_extension_1d();
  CHECK((*op)({2.0}) == Vec{2.0});
  CHECK((*op)({1.0}) == Vec{1.0});   // |p| = R exactly
  CHECK((*op)({-1.7}) == Vec{-1.7});
}

TEST_CASE("extension is exact at anchors") {
  const ExtensionPtr op = swap_extension_1d();
  CHECK((*op)({0.5}) == Vec{-0.5});
  CHECK((*op)({-0.5}) == Vec{0.5});
}

TEST_CASE("symmetric anchors average at the midpoint") {
  const ExtensionPtr op = swap_extension_1d();
  const Vec v = (*op)({0.0});
  CHECK(v[0] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("blend shell interpolates between interpolant and identity") {
  PointCloud anchors(2), values(2);
  anchors.push({0.0, 0.0});
  values.push({0.0, 0.0});
  const ExtensionOperator op(std::move(anchors), std::move(values), 1.0, 0.2, 4.0);

  // Pure region: the single-anchor interpolant is constant 0.
  const Vec inside = op({0.3, 0.0});
  CHECK(inside[0] == 0.0);
  CHECK(inside[1] == 0.0);

  // Shell: lambda(0.9) = (0.9-0.8)/0.2 = 1/2, so the value is p/2.
  const Vec shell = op({0.9, 0.0});
  CHECK(shell[0] == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(shell[1] == 0.0);
}

TEST_CASE("extension rejects invalid anchor sets") {
  PointCloud a(1), v(1);
  a.push({0.5});
  a.push({0.5});
  v.push({0.0});
  v.push({0.1});
  CHECK_THROWS(extend(std::move(a), std::move(v), 1.0));  // duplicate anchors

  PointCloud b(1), w(1);
  b.push({0.9});  // inside B(0,1) but inside the blend shell
  w.push({0.0});
  CHECK_THROWS(extend(std::move(b), std::move(w), 1.0));

  PointCloud c(1), u(1);
  c.push({1.5});  // outside the ball entirely
  u.push({0.0});
  CHECK_THROWS(extend(std::move(c), std::move(u), 1.0));
}

TEST_CASE("values inside B(0,R) keep every larger ball invariant") {
  // Anchors/values from a contraction sampled on the disk.
  PointCloud anchors = sample_ball(2, 0.6, 40, 99);
  PointCloud values(2);
  for (const Vec& p : anchors.points) values.push(scaled(Vec(p), 0.5));
  const ExtensionOperator op(std::move(anchors), std::move(values), 1.0, 0.2, 4.0);

  for (double r : {1.0, 1.7, 3.0}) {
    const PointCloud ball = sample_ball(2, r, 300, 17);
    for (const Vec& p : ball.points) CHECK(norm(op(p)) <= r * (1.0 + 1e-12));
  }
}

TEST_CASE("continuity probe stays bounded") {
  const ExtensionPtr op = swap_extension_1d();
  CHECK(op->continuity_probe(1e-5, 200, 4) < 50.0);
}

TEST_CASE("extension JSON round trip") {
  const ExtensionPtr op = swap_extension_1d();
  const ExtensionPtr back = extension_from_json(extension_to_json(*op));
  CHECK(back->radius() == op->radius());
  CHECK(back->shepard_power() == op->shepard_power());
  CHECK((*back)({0.31}) == (*op)({0.31}));
}
