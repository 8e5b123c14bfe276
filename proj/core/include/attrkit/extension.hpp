#pragma once

#include <memory>

#include <nlohmann/json_fwd.hpp>

#include "attrkit/invertible_map.hpp"
#include "attrkit/point_cloud.hpp"

namespace attrkit {

/// Continuous extension of a sampled map f: X -> R^n to all of R^n, equal to
/// the identity outside B(0,R).
///
/// Piecewise rule in |p|: pure inverse-distance (Shepard) interpolant of
/// anchors->values up to (1-blend_margin)*R, the identity from R outward
/// (bitwise: the branch returns p untouched), and a convex blend linear in
/// |p| on the shell between. Evaluation at an anchor returns its stored value
/// exactly; anchors must therefore sit strictly inside the pure-interpolant
/// region, which the constructor enforces.
class ExtensionOperator final : public PlainMap {
 public:
  ExtensionOperator(PointCloud anchors, PointCloud values, double radius,
                    double blend_margin = 0.2, double shepard_power = 4.0);

  int dim() const override { return anchors_.dim; }
  Vec operator()(const Vec& p) const override;
  std::string kind() const override { return "extension"; }

  const PointCloud& anchors() const { return anchors_; }
  const PointCloud& values() const { return values_; }
  double radius() const { return radius_; }
  double blend_margin() const { return blend_margin_; }
  double shepard_power() const { return shepard_power_; }

  /// Max forward difference quotient over adjacent seeded pairs at spacing
  /// delta (continuity probe; reported, not certified).
  double continuity_probe(double delta, int count, std::uint64_t seed) const;

 private:
  Vec shepard(const Vec& p) const;

  PointCloud anchors_;
  PointCloud values_;
  double radius_;
  double blend_margin_;
  double shepard_power_;
};

using ExtensionPtr = std::shared_ptr<const ExtensionOperator>;

ExtensionPtr extend(PointCloud anchors, PointCloud values, double radius,
                    double blend_margin = 0.2, double shepard_power = 4.0);

nlohmann::json extension_to_json(const ExtensionOperator& op);
ExtensionPtr extension_from_json(const nlohmann::json& j);

}  // namespace attrkit
