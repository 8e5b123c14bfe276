#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "attrkit/common.hpp"
#include "attrkit/profile.hpp"
#include "attrkit/linalg.hpp"

namespace attrkit {

/// Continuous total map of R^n, not necessarily invertible. Used for the
/// Tietze-style extensions phi/psi that the shear and swap-scale
/// homeomorphisms consume.
class PlainMap {
 public:
  virtual ~PlainMap() = default;
  virtual int dim() const = 0;
  virtual Vec operator()(const Vec& p) const = 0;
  virtual std::string kind() const = 0;
};

using PlainPtr = std::shared_ptr<const PlainMap>;

PlainPtr identity_plain(int dim);
PlainPtr function_plain(int dim, std::function<Vec(const Vec&)> fn, std::string label = "function");

/// Evaluable homeomorphism of R^dim with an exactly-stored inverse. Maps are
/// immutable after construction; evaluation is pure and re-entrant.
///
/// Compositional structure keeps inverses exact: every node inverts to a node
/// of the same family, so m->inverted()->forward agrees with m->inverse
/// identically, not just numerically.
class InvertibleMap {
 public:
  virtual ~InvertibleMap() = default;
  virtual int dim() const = 0;
  virtual Vec forward(const Vec& p) const = 0;
  virtual Vec inverse(const Vec& p) const = 0;
  virtual std::shared_ptr<const InvertibleMap> inverted() const = 0;
  virtual std::string kind() const = 0;
};

using MapPtr = std::shared_ptr<const InvertibleMap>;

MapPtr identity_map(int dim);

/// p -> p * profile(|p|)/|p|, 0 -> 0. The inverse profile is stored, so the
/// inverse is exact at profile breakpoints.
MapPtr radial_map(RadialProfile profile, int dim);

MapPtr affine_map(Mat a, Vec b);
MapPtr linear_map(Mat a);

/// Rotation by angle in the (axis_i, axis_j) coordinate plane.
MapPtr rotation_map(int dim, int axis_i, int axis_j, double angle);

/// Children applied first-to-last.
MapPtr compose(std::vector<MapPtr> children);

/// Block product: children act on consecutive coordinate blocks.
MapPtr block_product(std::vector<MapPtr> children);

/// Klee shear on R^{2n}: (x,y) -> (x, y + phi(x)); inverse subtracts.
MapPtr shear_f1(PlainPtr phi);

/// Klee swap-scale on R^{2n}: (x,y) -> (2y + psi(x), x);
/// inverse (x,y) -> (y, (x - psi(y))/2).
MapPtr swapscale_f2(PlainPtr psi);

/// Convenience: evaluate profile radially (the spec's radial_apply).
Vec radial_apply(const RadialProfile& profile, const Vec& p);

/// Max of |m^-1(m(p)) - p| and |m(m^-1(p)) - p| over the given points.
double max_roundtrip_error(const InvertibleMap& m, const std::vector<Vec>& points);

}  // namespace attrkit
