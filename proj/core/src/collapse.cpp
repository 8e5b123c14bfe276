#include "attrkit/collapse.hpp"

#include <cmath>

#include "attrkit/samplers.hpp"

namespace attrkit {

namespace {

// Three-segment ray profile (0,0) -> (b,t) -> (outer,outer) -> identity.
double stage_eval(double r, double b, double t, double outer) {
  if (r >= outer) return r;  // exact identity branch
  if (r == b) return t;
  if (r < b) return r * (t / b);
  return t + (r - b) * (outer - t) / (outer - b);
}

double stage_invert(double v, double b, double t, double outer) {
  if (v >= outer) return v;
  if (v == t) return b;
  if (v < t) return v * (b / t);
  return b + (v - t) * (outer - b) / (outer - t);
}

}  // namespace

int CollapseMap::dim() const { return core_->cells.cells().front().chart->dim(); }

double CollapseMap::outer_radius() const { return core_->R; }

const CellSequence& CollapseMap::cells() const { return core_->cells; }

double CollapseMap::stage_target(int j) const {
  require(j >= 1 && j <= stages_used_, "collapse: stage index ", j, " out of range");
  return core_->targets[static_cast<std::size_t>(j - 1)];
}

std::shared_ptr<const CollapseMap> CollapseMap::stage(int j) const {
  require(j >= 1 && j <= stages_used_, "collapse: stage index ", j, " out of range");
  return std::shared_ptr<const CollapseMap>(new CollapseMap(core_, j, inverse_mode_));
}

std::vector<CollapseMap::StageParams> CollapseMap::stage_params(const Vec& xi) const {
  const auto& cs = core_->cells.cells();
  std::vector<double> e(static_cast<std::size_t>(stages_used_));
  for (int i = 0; i < stages_used_; ++i) {
    e[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i)].extent(xi);
    require(e[static_cast<std::size_t>(i)] > 0.0 && std::isfinite(e[static_cast<std::size_t>(i)]),
            "collapse: nonpositive cell extent at index ", i + 1);
  }
  std::vector<StageParams> out(static_cast<std::size_t>(stages_used_));
  double outer = core_->R;
  for (int j = 0; j < stages_used_; ++j) {
    const double b = e[static_cast<std::size_t>(j)];
    const double t = core_->targets[static_cast<std::size_t>(j)];
    require(b < outer, "collapse: cell ", j + 1, " extent ", b,
            " not strictly inside the active region ", outer);
    out[static_cast<std::size_t>(j)] = {b, t, outer};
    for (int i = j + 1; i < stages_used_; ++i)
      e[static_cast<std::size_t>(i)] = stage_eval(e[static_cast<std::size_t>(i)], b, t, outer);
    outer = t;
  }
  return out;
}

Vec CollapseMap::eval(const Vec& p, bool inverse) const {
  require(static_cast<int>(p.size()) == dim(), "collapse: dimension mismatch");
  if (is_zero(p)) return p;
  const double r = norm(p);
  if (r >= core_->R) return p;  // identity outside B(0,R), bitwise
  const Vec xi = scaled(p, 1.0 / r);
  const std::vector<StageParams> st = stage_params(xi);
  double v = r;
  if (!inverse) {
    for (const StageParams& s : st) v = stage_eval(v, s.b, s.t, s.outer);
  } else {
    for (auto it = st.rbegin(); it != st.rend(); ++it)
      v = stage_invert(v, it->b, it->t, it->outer);
  }
  if (v == r) return p;
  return scaled(xi, v);
}

Vec CollapseMap::forward(const Vec& p) const { return eval(p, inverse_mode_); }
Vec CollapseMap::inverse(const Vec& p) const { return eval(p, !inverse_mode_); }

MapPtr CollapseMap::inverted() const {
  return std::shared_ptr<const CollapseMap>(
      new CollapseMap(core_, stages_used_, !inverse_mode_));
}

CollapseMap brown_collapse(const CellSequence& cells, double R, int J, int harmonic_prefix,
                           int validation_dirs, std::uint64_t seed) {
  require(J >= 1, "brown_collapse: depth must be >= 1");
  require(static_cast<std::size_t>(J) <= cells.size(), "brown_collapse: depth ", J,
          " exceeds available cells (", cells.size(), ")");
  require(R > 0.0, "brown_collapse: outer radius must be positive");
  require(harmonic_prefix >= 1, "brown_collapse: harmonic prefix must be >= 1");

  cells.validate_nesting(validation_dirs, seed);
  const int dim = cells.cells().front().chart->dim();
  const PointCloud dirs = sample_sphere(dim, 1.0, validation_dirs, seed ^ 0x51ull);
  for (const Vec& xi : dirs.points)
    require(cells.cells().front().extent(xi) < R,
            "brown_collapse: cell 1 is not strictly inside B(0,", R, ")");

  // t_j = R/(j+1) through the harmonic prefix, halving afterwards; both
  // phases satisfy t_j <= R/(j+1).
  std::vector<double> targets(static_cast<std::size_t>(J));
  double prev = R;
  for (int j = 1; j <= J; ++j) {
    prev = j <= harmonic_prefix ? R / (j + 1) : std::min(R / (j + 1), prev / 2.0);
    targets[static_cast<std::size_t>(j - 1)] = prev;
  }
  auto core = std::make_shared<const CollapseMap::Core>(cells, R, std::move(targets));
  return CollapseMap(std::move(core), J, false);
}

}  // namespace attrkit
