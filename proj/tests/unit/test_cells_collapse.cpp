#include <doctest.h>

#include "attrkit/collapse.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

TEST_CASE("flat-ball extents cover the shipped shapes") {
  // L = 0: round.
  CHECK(flat_ball_extent({1.0, 0.0, 0.0}, 0, 0.0, 0.3) == 0.3);
  // Along the flat axis: L + d.
  CHECK(flat_ball_extent({1.0, 0.0, 0.0}, 1, 0.5, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  // Perpendicular: d.
  CHECK(flat_ball_extent({0.0, 0.0, 1.0}, 1, 0.5, 0.25) == doctest::Approx(0.25).epsilon(1e-14));
  // Shallow ray exits through the flat face at t = d/w.
  Vec xi = {std::sqrt(1.0 - 0.01), 0.0, 0.1};
  CHECK(flat_ball_extent(xi, 1, 0.5, 0.01) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("flat-ball extent is continuous across the rim branch") {
  // Directions straddling the straight/quadratic switch.
  const double L = 0.7, d = 0.31;
  for (int i = 0; i <= 400; ++i) {
    const double a = 1e-4 + (1.5) * i / 400.0;
    const Vec xi0 = {std::cos(a), std::sin(a)};
    const Vec xi1 = {std::cos(a + 1e-9), std::sin(a + 1e-9)};
    const double e0 = flat_ball_extent(xi0, 1, L, d);
    const double e1 = flat_ball_extent(xi1, 1, L, d);
    CHECK(std::abs(e0 - e1) <= 1e-6);
  }
}

TEST_CASE("cell sequences validate nesting and report the offending index") {
  const CellSequence good = round_cells(2, 1.0, {0.5, 0.25, 0.125});
  CHECK_NOTHROW(good.validate_nesting(32, 5));

  // Hand-build a broken sequence (inner cell larger than its predecessor).
  std::vector<Cell> cells = round_cells(2, 1.0, {0.25}).cells();
  cells.push_back(round_cells(2, 1.0, {0.5}).cells().front());
  const CellSequence bad(std::move(cells), 1.0);
  try {
    bad.validate_nesting(32, 5);
    FAIL("nesting violation not detected");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("star charts round-trip and scale with the sequence") {
  const CellSequence seq = flat_ball_cells(3, 1, 0.5, 1.0, {0.3, 0.1});
  const PointCloud grid = test_grid(3, 1.5, 300, 23);
  for (const Cell& c : seq.cells()) CHECK(max_roundtrip_error(*c.chart, grid.points) <= 1e-9);

  const CellSequence doubled = seq.scaled(2.0);
  const Vec xi = {1.0, 0.0, 0.0};
  CHECK(doubled.cells()[0].extent(xi) == doctest::Approx(2.0 * seq.cells()[0].extent(xi)));
  CHECK(doubled.cells()[0].extent_bound == doctest::Approx(2.0 * seq.cells()[0].extent_bound));
}

TEST_CASE("brown collapse sends cell j into B(0, R/(j+1)) and is identity outside") {
  // Round cells 2^-j, R = 1, J = 3: innermost ball maps within B(0, 1/4).
  const CellSequence cells = round_cells(2, 1.0, {0.5, 0.25, 0.125});
  const CollapseMap g = brown_collapse(cells, 1.0, 3);

  PointCloud inner = sample_ball(2, 0.125, 200, 31);
  for (Vec& p : sample_sphere(2, 0.125, 100, 32).points) inner.push(std::move(p));
  for (const Vec& p : inner.points) CHECK(norm(g.forward(p)) <= 0.25 * (1.0 + 1e-12));

  // Stage bound holds for every prefix.
  for (int j = 1; j <= 3; ++j) {
    const auto gj = g.stage(j);
    const double rj = std::ldexp(1.0, -j);
    for (const Vec& p : sample_sphere(2, rj, 100, 33 + static_cast<std::uint64_t>(j)).points)
      CHECK(norm(gj->forward(p)) <= 1.0 / (j + 1) * (1.0 + 1e-12));
  }

  // Exterior identity, bitwise.
  for (const Vec& p : sample_sphere(2, 1.0, 50, 34).points) {
    CHECK(g.forward(p) == p);
    const Vec q = scaled(Vec(p), 1.37);
    CHECK(g.forward(q) == q);
  }
}

TEST_CASE("single-stage collapse squeezes the cell boundary to R/2 exactly") {
  const CellSequence cells = round_cells(2, 1.0, {0.8});
  const CollapseMap g = brown_collapse(cells, 1.0, 1);
  const Vec image = g.forward({0.8, 0.0});
  CHECK(norm(image) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.stage_target(1) == 0.5);
}

TEST_CASE("stages agree with the previous stage outside the previous cell") {
  const CellSequence cells = flat_ball_cells(3, 1, 0.4, 1.0, {0.45, 0.2, 0.08, 0.03});
  const CollapseMap g = brown_collapse(cells, 1.0, 4);
  const PointCloud probes = test_grid(3, 0.95, 400, 35);
  for (int j = 2; j <= 4; ++j) {
    const auto gj = g.stage(j);
    const auto gprev = g.stage(j - 1);
    const Cell& prev_cell = cells.cells()[static_cast<std::size_t>(j - 2)];
    for (const Vec& p : probes.points) {
      if (is_zero(p)) continue;
      const double r = norm(p);
      const Vec xi = scaled(Vec(p), 1.0 / r);
      if (r <= prev_cell.extent(xi)) continue;  // inside the previous cell
      CHECK(gj->forward(p) == gprev->forward(p));
    }
  }
}

TEST_CASE("collapse round-trips tightly") {
  const CellSequence cells = flat_ball_cells(4, 2, 0.5, 1.0, {0.4, 0.15, 0.05, 0.012, 0.003});
  const CollapseMap g = brown_collapse(cells, 1.0, 5);
  const PointCloud grid = test_grid(4, 2.0, 1000, 36);
  CHECK(max_roundtrip_error(g, grid.points) <= 1e-9);
}

TEST_CASE("brown collapse rejects bad inputs") {
  const CellSequence cells = round_cells(2, 1.0, {0.5, 0.25});
  CHECK_THROWS(brown_collapse(cells, 1.0, 3));  // deeper than the cells
  // Cell 1 not strictly inside B(0,R).
  const CellSequence big = round_cells(2, 1.0, {0.999999});
  CHECK_NOTHROW(brown_collapse(big, 1.0, 1));
  const CellSequence tight = round_cells(2, 0.8, {0.79});
  CHECK_THROWS(brown_collapse(tight, 0.5, 1));
}
