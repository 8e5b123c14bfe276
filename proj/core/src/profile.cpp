#include "attrkit/profile.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace attrkit {

RadialProfile::RadialProfile(std::vector<Breakpoint> breakpoints, double tail_slope,
                             bool allow_flat_tail)
    : bps_(std::move(breakpoints)), tail_(tail_slope) {
  require(std::isfinite(tail_), "profile: tail slope must be finite");
  if (allow_flat_tail)
    require(tail_ >= 0.0, "profile: tail slope must be nonnegative");
  else
    require(tail_ > 0.0, "profile: tail slope must be positive, got ", tail_);

  double prev_r = 0.0;
  double prev_v = 0.0;
  for (const Breakpoint& bp : bps_) {
    require(std::isfinite(bp.r) && std::isfinite(bp.value),
            "profile: breakpoints must be finite");
    require(bp.r > prev_r, "profile: breakpoint radii must be strictly increasing; ",
            bp.r, " after ", prev_r);
    require(bp.value > prev_v,
            "profile: breakpoint values must be strictly increasing; ", bp.value,
            " after ", prev_v);
    prev_r = bp.r;
    prev_v = bp.value;
  }
}

RadialProfile RadialProfile::identity() { return RadialProfile({}, 1.0); }

RadialProfile RadialProfile::scaling(double s) {
  require(s > 0.0 && std::isfinite(s), "profile: scaling factor must be positive");
  return RadialProfile({}, s);
}

double RadialProfile::operator()(double r) const {
  require(r >= 0.0 && std::isfinite(r), "profile: argument must be finite and >= 0, got ", r);
  if (r == 0.0) return 0.0;

  // Segment with left endpoint (r0,v0), right endpoint (r1,v1); the implicit
  // first endpoint is (0,0) and the last segment extends with tail slope.
  double r0 = 0.0, v0 = 0.0;
  for (const Breakpoint& bp : bps_) {
    if (r <= bp.r) {
      if (r == bp.r) return bp.value;
      if (v0 == r0 && bp.value == bp.r) return r;  // diagonal segment: exact identity
      return v0 + (r - r0) * (bp.value - v0) / (bp.r - r0);
    }
    r0 = bp.r;
    v0 = bp.value;
  }
  if (tail_ == 1.0 && v0 == r0) return r;  // identity tail
  return v0 + (r - r0) * tail_;
}

RadialProfile RadialProfile::inverse() const {
  require(tail_ > 0.0, "profile: flat-tail profile is not invertible");
  std::vector<Breakpoint> inv(bps_.size());
  for (std::size_t i = 0; i < bps_.size(); ++i) inv[i] = {bps_[i].value, bps_[i].r};
  return RadialProfile(std::move(inv), 1.0 / tail_);
}

nlohmann::json profile_to_json(const RadialProfile& p) {
  nlohmann::json j;
  j["breakpoints"] = nlohmann::json::array();
  for (const auto& bp : p.breakpoints()) j["breakpoints"].push_back({bp.r, bp.value});
  j["tail_slope"] = p.tail_slope();
  return j;
}

RadialProfile profile_from_json(const nlohmann::json& j) {
  std::vector<RadialProfile::Breakpoint> bps;
  for (const auto& bp : j.at("breakpoints"))
    bps.push_back({bp[0].get<double>(), bp[1].get<double>()});
  const double tail = j.at("tail_slope").get<double>();
  return RadialProfile(std::move(bps), tail, /*allow_flat_tail=*/tail == 0.0);
}

}  // namespace attrkit

