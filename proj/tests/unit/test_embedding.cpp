#include <doctest.h>

#include "attrkit/demos.hpp"
#include "attrkit/embedding.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

TEST_CASE("identity embedding is accepted when the ambient dimension matches") {
  const PointCloud x = sample_ball(3, 1.0, 12, 44);
  const Embedding e = embed(x, 1, 8, 7);  // 2k+1 = 3 = ambient
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(e.matrix.at(i, j) == (i == j ? 1.0 : 0.0));
  CHECK(e.injectivity_margin > 1e-4);

  // Conjugating by the identity embedding leaves the samples unchanged.
  SampledSystem sys = SampledSystem::from_map(rotation_map(3, 0, 1, 0.4), x);
  const SampledSystem conj = conjugate_system(sys, e);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(conj.domain.points[i] == sys.domain.points[i]);
    CHECK(conj.image.points[i] == sys.image.points[i]);
  }
}

TEST_CASE("three points in R^5 embed injectively into R^3") {
  PointCloud x(5);
  x.push({1.0, 0.0, 0.0, 0.0, 0.0});
  x.push({0.0, 1.0, 0.0, 2.0, 0.0});
  x.push({0.0, 0.0, -1.0, 0.0, 0.5});
  const Embedding e = embed(x, 1, 16, 3);
  REQUIRE(e.anchors_out.size() == 3);
  // Brute-force pairwise distinctness of the images.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      CHECK(dist(e.anchors_out.points[i], e.anchors_out.points[j]) > 0.0);
  CHECK(e.target_dim() == 3);
}

TEST_CASE("duplicate samples are rejected") {
  PointCloud x(4);
  x.push({1.0, 0.0, 0.0, 0.0});
  x.push({1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS(embed(x, 1, 4, 9));
}

TEST_CASE("the failure message carries the best margin found") {
  const PointCloud x = sample_ball(9, 1.0, 30, 45);
  try {
    embed(x, 1, 3, 11, /*margin_floor=*/10.0);  // unreachable floor
    FAIL("margin floor unexpectedly reached");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("best margin") != std::string::npos);
  }
}

TEST_CASE("nearest-anchor inversion is exact on anchors") {
  const PointCloud x = sample_ball(6, 1.0, 25, 46);
  const Embedding e = embed(x, 2, 16, 12);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(e.invert_nearest(e.anchors_out.points[i]) == x.points[i]);
}

TEST_CASE("pad_dimension appends exactly one zero") {
  PointCloud x(2);
  x.push({1.0, 2.0});
  const PointCloud p1 = pad_dimension(x);
  CHECK(p1.dim == 3);
  CHECK(p1.points[0] == Vec{1.0, 2.0, 0.0});
  CHECK(norm(p1.points[0]) == norm(x.points[0]));
  const PointCloud p2 = pad_dimension(p1);
  CHECK(p2.points[0] == Vec{1.0, 2.0, 0.0, 0.0});
}

TEST_CASE("padding preserves pairwise distances exactly") {
  const PointCloud x = sample_ball(3, 2.0, 20, 47);
  const PointCloud padded = pad_dimension(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      CHECK(dist(padded.points[i], padded.points[j]) == dist(x.points[i], x.points[j]));
}

TEST_CASE("conjugated systems pair embedded samples") {
  const DemoSystem demo = make_demo("disk_rotation", {{"rings", 3}, {"per_ring", 12}});
  const SampledSystem sys = demo_system(demo);
  const Embedding e = embed(sys.domain, demo.k, 64, 13);
  const SampledSystem conj = conjugate_system(sys, e);
  REQUIRE(conj.domain.size() == sys.domain.size());

  // Rotate-then-embed equals the conjugated image samples, pointwise.
  for (std::size_t i = 0; i < sys.domain.size(); ++i) {
    const Vec rotated = demo.map->forward(sys.domain.points[i]);
    CHECK(conj.image.points[i] == e.apply(rotated));
    CHECK(conj.domain.points[i] == e.apply(sys.domain.points[i]));
  }

  // Identity dynamics conjugate to identity on the embedded samples.
  SampledSystem id_sys = SampledSystem::from_map(identity_map(demo.ambient_dim), sys.domain);
  const SampledSystem id_conj = conjugate_system(id_sys, e);
  for (std::size_t i = 0; i < id_conj.domain.size(); ++i)
    CHECK(id_conj.domain.points[i] == id_conj.image.points[i]);
}

TEST_CASE("conjugation refuses an ill-conditioned margin") {
  const DemoSystem demo = make_demo("arc_morse", {{"samples", 11}});
  const SampledSystem sys = demo_system(demo);
  const Embedding e = embed(sys.domain, demo.k, 64, 14);
  CHECK_THROWS(conjugate_system(sys, e, /*margin_floor=*/10.0));
}
