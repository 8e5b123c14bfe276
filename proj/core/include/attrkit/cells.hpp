#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrkit/invertible_map.hpp"
#include "attrkit/point_cloud.hpp"

namespace attrkit {

/// Radial extent of a star-shaped (about the origin) region along a unit
/// direction. Must be continuous and strictly positive.
using ExtentFn = std::function<double(const Vec&)>;

/// Topological ball given as the image of B(0,R) under an invertible chart.
/// The shipped providers are all star-shaped about the origin and carry an
/// analytic ray-extent function; charts recovered from homeomorphism iterates
/// fall back to bisection through the chart inverse.
struct Cell {
  MapPtr chart;
  ExtentFn extent;
  std::string provider;
  nlohmann::json params;
  double extent_bound = 0.0;       // sup of extent over all directions
  std::vector<Vec> extreme_dirs;   // directions (near-)achieving the sup
};

/// Strictly nested sequence of cells (cell j+1 inside the interior of cell
/// j), all star-shaped about the origin. R is the chart domain radius.
class CellSequence {
 public:
  CellSequence(std::vector<Cell> cells, double R);

  const std::vector<Cell>& cells() const { return cells_; }
  double R() const { return R_; }
  std::size_t size() const { return cells_.size(); }

  /// Checks strict nesting on sampled directions and, through the chart
  /// inverses, on sampled boundary points. Throws naming the first offending
  /// index.
  void validate_nesting(int direction_samples, std::uint64_t seed) const;

  /// Cells for the dilated set s*X: extents scale by s, charts gain a left
  /// scaling factor. Chart domain radius is unchanged.
  CellSequence scaled(double s) const;

 private:
  std::vector<Cell> cells_;
  double R_;
};

/// Ray-preserving chart: p -> p * extent(p/|p|) / R. Exact inverse (rays are
/// preserved, so the direction is recoverable from the image).
MapPtr star_chart(int dim, double R, ExtentFn extent);

/// Radial extent of N(X, d) where X is the ball of radius L in the first
/// flat_dim coordinates (L=0: round ball of radius d; flat_dim=1: segment
/// neighbourhood; flat_dim=2: disk neighbourhood).
double flat_ball_extent(const Vec& xi, int flat_dim, double L, double d);

/// Nested round balls of the given radii.
CellSequence round_cells(int dim, double R, const std::vector<double>& radii);

/// Nested neighbourhoods N(X, margin_j) of the flat ball of radius L in the
/// first flat_dim coordinates. Margins must be strictly decreasing.
CellSequence flat_ball_cells(int dim, int flat_dim, double L, double R,
                             const std::vector<double>& margins);

/// Nested affine images radii_j * axes(B(0,1)); axes must be invertible.
CellSequence ellipsoid_cells(int dim, double R, const Mat& axes,
                             const std::vector<double>& radii);

/// Cell from an arbitrary invertible chart; the ray extent is recovered by
/// bisection through the chart inverse (the image must be star-shaped about
/// the origin for this to be meaningful; nesting validation will catch gross
/// violations).
Cell cell_from_chart(MapPtr chart, double R, std::string provider = "chart",
                     nlohmann::json params = {});

/// Rebuild a shipped provider from its serialized name + parameters.
CellSequence cells_from_json(const nlohmann::json& j);
nlohmann::json cells_to_json(const CellSequence& cells);

}  // namespace attrkit
