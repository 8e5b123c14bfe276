#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "attrkit/common.hpp"

namespace attrkit {

/// Strictly increasing piecewise-linear function [0,inf) -> [0,inf) with
/// value(0) = 0 and a linear tail beyond the last breakpoint. Segments that
/// lie exactly on the diagonal evaluate to the identity bitwise, so radial
/// maps built from such profiles are the exact identity on those ranges.
///
/// The inverse is again a profile (breakpoints swapped, tail slope inverted)
/// and is exact at breakpoints.
class RadialProfile {
 public:
  struct Breakpoint {
    double r;
    double value;
  };

  /// Flat tails (tail_slope == 0) are rejected unless allow_flat_tail is set;
  /// the only shipped flat-tail profile is Theorem-style beta, which is never
  /// inverted.
  RadialProfile(std::vector<Breakpoint> breakpoints, double tail_slope,
                bool allow_flat_tail = false);

  static RadialProfile identity();
  static RadialProfile scaling(double s);

  double operator()(double r) const;
  RadialProfile inverse() const;

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  double tail_slope() const { return tail_; }
  bool flat_tail() const { return tail_ == 0.0; }

 private:
  std::vector<Breakpoint> bps_;
  double tail_;
};

nlohmann::json profile_to_json(const RadialProfile& p);
RadialProfile profile_from_json(const nlohmann::json& j);

}  // namespace attrkit
