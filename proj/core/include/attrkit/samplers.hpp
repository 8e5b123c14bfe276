#pragma once

#include <cstdint>

#include "attrkit/point_cloud.hpp"

namespace attrkit {

/// Deterministic samplers keyed by seed (counter-based generator, so the
/// clouds are reproducible bit-for-bit). Norm constraints hold exactly up to
/// floating-point normalization (|p| = radius within ~1e-15 relative).
PointCloud sample_sphere(int dim, double radius, int count, std::uint64_t seed);
PointCloud sample_ball(int dim, double radius, int count, std::uint64_t seed);
PointCloud sample_annulus(int dim, double r_in, double r_out, int count, std::uint64_t seed);

/// Deterministic axis-aligned grid over [-extent, extent]^dim plus seeded
/// fill; handy for round-trip test grids of a fixed size.
PointCloud test_grid(int dim, double extent, int count, std::uint64_t seed);

}  // namespace attrkit
