#pragma once

#include <memory>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "attrkit/collapse.hpp"
#include "attrkit/point_cloud.hpp"

namespace attrkit {

struct GarayOptions {
  int collapse_depth = 20;       // truncation depth J
  int harmonic_prefix = 1;       // forwarded to brown_collapse
  int bk_depth = 22;             // b_k estimated from the modulus up to this k
  int bk_extend = 48;            // geometric continuation depth for beta
  int modulus_directions = 24;   // rays sampled per annulus
  int modulus_radii = 33;        // radii sampled per ray
  int validation_dirs = 64;
  std::uint64_t seed = 0xA77AC7ull;
};

/// Sampled uniform-continuity data for g^-1 on the annuli
/// 2^-(k+1) <= |v| <= 2^-k: the clamped b_k, the pre-clamp modulus estimate,
/// and the count of sampled violations of |g^-1(r xi)-g^-1(s xi)| <= 2^-k
/// under the final b_k (flagged, expected zero with the safety factor).
struct ModulusReport {
  std::vector<double> b;
  std::vector<double> raw;
  int violations = 0;
};

/// Largest step size for which the sampled ray modulus of g^-1 on annulus k
/// stays below 2^-k with safety factor 2, then clamped to the constraints
/// b_k < min(b_{k-1}/2, 2^-(k+3)) and (k = 0 only) b_0 < b0_cap.
double estimate_bk(const InvertibleMap& g, int k, int directions, int radii,
                   double b_prev, double b0_cap, std::uint64_t seed);

/// Homeomorphism fixing every supplied sample of X exactly whose global
/// attractor is (up to the recorded truncation error) X. Works in rescaled
/// coordinates with outer radius 2 (the construction requires an outer
/// radius > 1) and undoes the rescaling on evaluation; spheres of radius
/// r >= R map to spheres of radius r - rho.
class GarayMap final : public InvertibleMap {
 public:
  int dim() const override;
  Vec forward(const Vec& x) const override;
  Vec inverse(const Vec& x) const override;
  MapPtr inverted() const override;
  std::string kind() const override { return "composition"; }

  const CollapseMap& collapse() const;
  const RadialProfile& beta() const;
  const RadialProfile& alpha() const;
  /// b_k in working (rescaled) coordinates.
  const std::vector<double>& bk() const;
  const ModulusReport& modulus() const;
  /// Per-step sphere shrink in the map's own coordinates (= b_0 / scale).
  double rho() const;
  double R() const;
  double R_prime() const;
  double scale() const;
  const PointCloud& fixed_samples() const;
  /// Norm bound on the collapsed image of X (working coords), and the
  /// resulting bound R'/(J+1) from the construction.
  double truncation_target() const;
  double truncation_bound() const;

 private:
  friend std::shared_ptr<const GarayMap> garay_map(const PointCloud&, const CellSequence&,
                                                   double, const GarayOptions&);
  struct Core;
  GarayMap(std::shared_ptr<const Core> core, bool inverse_mode)
      : core_(std::move(core)), inverse_mode_(inverse_mode) {}

  Vec eval(const Vec& x, bool inverse) const;

  std::shared_ptr<const Core> core_;
  bool inverse_mode_;
};

using GarayPtr = std::shared_ptr<const GarayMap>;

/// Theorem-style construction from a sample of X and a nested cell sequence
/// shrinking to X. X must lie inside the innermost cell; cells must fit well
/// inside B(0,R) so that the rescaled outer radii R > R' > 1 exist.
GarayPtr garay_map(const PointCloud& X, const CellSequence& cells, double R,
                   const GarayOptions& opts = {});

nlohmann::json garay_to_json(const GarayMap& h);

}  // namespace attrkit
