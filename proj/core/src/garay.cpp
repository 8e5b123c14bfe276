#include "attrkit/garay.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "attrkit/rng.hpp"
#include "attrkit/samplers.hpp"

namespace attrkit {

namespace {

std::string pack_key(const Vec& v) {
  std::string key(v.size() * sizeof(double), '\0');
  std::memcpy(key.data(), v.data(), key.size());
  return key;
}

double modulus_over(const InvertibleMap& g, int k, int radii, const PointCloud& dirs) {
  const double hi = std::ldexp(1.0, -k);
  const double lo = 0.5 * hi;
  double L = 0.0;
  for (const Vec& xi : dirs.points) {
    Vec prev = g.inverse(scaled(Vec(xi), lo));
    double prev_r = lo;
    for (int i = 1; i < radii; ++i) {
      const double r = lo + (hi - lo) * i / (radii - 1);
      Vec cur = g.inverse(scaled(Vec(xi), r));
      L = std::max(L, dist(cur, prev) / (r - prev_r));
      prev = std::move(cur);
      prev_r = r;
    }
  }
  return L;
}

double clamp_bk(double raw_modulus, int k, double b_prev, double b0_cap) {
  const double target = std::ldexp(1.0, -k);
  double bk = raw_modulus > 0.0 ? target / (2.0 * raw_modulus) : target;
  const double shrink = 1.0 - 1e-6;
  bk = std::min(bk, shrink * std::ldexp(1.0, -(k + 3)));
  if (std::isfinite(b_prev)) bk = std::min(bk, shrink * b_prev / 2.0);
  if (std::isfinite(b0_cap)) bk = std::min(bk, shrink * b0_cap);
  return bk;
}

// Random rays miss the worst stretch of g^-1 when the extreme directions
// occupy a tiny solid angle (flat cells: the in-plane axis). The pool mixes
// seeded rays with the cells' advertised extremes and perturbations thereof.
PointCloud modulus_direction_pool(const CellSequence& cells, int dim, int random_count,
                                  std::uint64_t seed) {
  PointCloud dirs = sample_sphere(dim, 1.0, random_count, seed);
  const CounterRng rng = CounterRng(seed).stream("modulus_perturb");
  std::uint64_t ctr = 0;
  for (const Cell& cell : cells.cells()) {
    for (const Vec& axis : cell.extreme_dirs) {
      dirs.push(axis);
      dirs.push(scaled(Vec(axis), -1.0));
      for (double step : {1e-3, 1e-6, 1e-9}) {
        Vec jitter = rng.gaussian_vec(ctr++, dim);
        Vec p = axpy(Vec(axis), step / norm(jitter), jitter);
        dirs.push(scaled(Vec(p), 1.0 / norm(p)));
      }
    }
    if (!cell.extreme_dirs.empty()) break;  // nested same-family cells share extremes
  }
  return dirs;
}

}  // namespace

double estimate_bk(const InvertibleMap& g, int k, int directions, int radii,
                   double b_prev, double b0_cap, std::uint64_t seed) {
  require(k >= 0, "estimate_bk: k must be >= 0");
  const PointCloud dirs = sample_sphere(g.dim(), 1.0, directions, seed);
  return clamp_bk(modulus_over(g, k, radii, dirs), k, b_prev, b0_cap);
}

struct GarayMap::Core {
  CollapseMap g;
  RadialProfile beta;
  RadialProfile alpha;
  RadialProfile alpha_inv;
  std::vector<double> b;
  ModulusReport modulus;
  double scale;
  double R_orig;
  double R_prime;
  PointCloud samples;
  std::unordered_set<std::string> sample_keys;

  Core(CollapseMap g_, RadialProfile beta_, RadialProfile alpha_, std::vector<double> b_,
       ModulusReport mod, double scale_, double R_orig_, double R_prime_, PointCloud samples_)
      : g(std::move(g_)),
        beta(std::move(beta_)),
        alpha(std::move(alpha_)),
        alpha_inv(alpha.inverse()),
        b(std::move(b_)),
        modulus(std::move(mod)),
        scale(scale_),
        R_orig(R_orig_),
        R_prime(R_prime_),
        samples(std::move(samples_)) {
    for (const Vec& x : samples.points) sample_keys.insert(pack_key(x));
  }
};

int GarayMap::dim() const { return core_->g.dim(); }

const CollapseMap& GarayMap::collapse() const { return core_->g; }
const RadialProfile& GarayMap::beta() const { return core_->beta; }
const RadialProfile& GarayMap::alpha() const { return core_->alpha; }
const std::vector<double>& GarayMap::bk() const { return core_->b; }
const ModulusReport& GarayMap::modulus() const { return core_->modulus; }
double GarayMap::rho() const { return core_->b[0] / core_->scale; }
double GarayMap::R() const { return core_->R_orig; }
double GarayMap::R_prime() const { return core_->R_prime; }
double GarayMap::scale() const { return core_->scale; }
const PointCloud& GarayMap::fixed_samples() const { return core_->samples; }
double GarayMap::truncation_target() const { return core_->g.innermost_target(); }
double GarayMap::truncation_bound() const {
  return core_->R_prime / (core_->g.depth() + 1);
}

Vec GarayMap::eval(const Vec& x, bool inverse) const {
  require(static_cast<int>(x.size()) == dim(), "garay: dimension mismatch");
  if (core_->sample_keys.count(pack_key(x)) != 0) return x;  // h|_X = id, exact
  Vec y = scaled(Vec(x), core_->scale);
  Vec z = core_->g.forward(y);
  const double v = norm(z);
  if (v == 0.0) return x;  // collapse centre is fixed
  const double a = inverse ? core_->alpha_inv(v) : core_->alpha(v);
  Vec w = core_->g.inverse(scaled(std::move(z), a / v));
  return scaled(std::move(w), 1.0 / core_->scale);
}

Vec GarayMap::forward(const Vec& x) const { return eval(x, inverse_mode_); }
Vec GarayMap::inverse(const Vec& x) const { return eval(x, !inverse_mode_); }

MapPtr GarayMap::inverted() const {
  return std::shared_ptr<const GarayMap>(new GarayMap(core_, !inverse_mode_));
}

GarayPtr garay_map(const PointCloud& X, const CellSequence& cells, double R,
                   const GarayOptions& opts) {
  require(!X.empty(), "garay_map: X must be nonempty");
  const int dim = cells.cells().front().chart->dim();
  require(X.dim == dim, "garay_map: X dimension ", X.dim, " vs cells dimension ", dim);
  require(R > 0.0, "garay_map: outer radius must be positive");
  require(X.max_norm() < R, "garay_map: X must lie strictly inside B(0,R)");
  require(opts.collapse_depth >= 1 &&
              static_cast<std::size_t>(opts.collapse_depth) <= cells.size(),
          "garay_map: collapse depth must be in [1, cell count]");

  // Work at outer radius 2 (> 1 as the construction requires).
  const double s = 2.0 / R;
  const CellSequence wcells = cells.scaled(s);

  // X must sit inside the innermost cell actually used.
  const Cell& innermost = wcells.cells()[static_cast<std::size_t>(opts.collapse_depth - 1)];
  for (std::size_t i = 0; i < X.size(); ++i) {
    Vec y = scaled(Vec(X.points[i]), s);
    const double r = norm(y);
    if (r == 0.0) continue;
    const double ext = innermost.extent(scaled(std::move(y), 1.0 / r));
    require(r < ext, "garay_map: sample ", i, " lies outside the innermost cell (", r,
            " !< ", ext, ")");
  }

  const double c1 = wcells.cells().front().extent_bound;
  require(c1 > 0.0, "garay_map: outermost cell carries no extent bound");
  const PointCloud dirs = sample_sphere(dim, 1.0, opts.validation_dirs, opts.seed ^ 0x9e1ull);
  for (const Vec& xi : dirs.points)
    require(wcells.cells().front().extent(xi) <= c1,
            "garay_map: cell extent bound is not an upper bound");
  require(c1 < 1.855, "garay_map: outermost cell too large after rescaling (extent ", c1,
          "); shrink the cells relative to R");
  const double R_prime = std::max(1.05, 0.5 * (c1 + 1.86));

  CollapseMap g = brown_collapse(wcells, R_prime, opts.collapse_depth, opts.harmonic_prefix,
                                 opts.validation_dirs, opts.seed);

  // b_k from the sampled modulus of g^-1, with the paper's clamps. The
  // estimation must reach below the truncation scale t_J: inside the
  // innermost cell the collapse is linear along rays and g^-1 stretches by
  // ~extent/t_J, so b_k in those octaves is set by the modulus, not the
  // 2^-(k+3) cap. A geometric continuation started above t_J would let h
  // drag the whole innermost cell toward the origin.
  const int bk_depth = std::max(
      opts.bk_depth,
      static_cast<int>(std::ceil(-std::log2(g.innermost_target()))) + 2);
  const int bk_extend = std::max(opts.bk_extend, bk_depth + 20);

  ModulusReport rep;
  const double b0_cap = 2.0 - R_prime;
  double prev = std::numeric_limits<double>::infinity();
  const PointCloud pool = modulus_direction_pool(wcells, dim, opts.modulus_directions,
                                                 opts.seed ^ 0xD12ull);
  for (int k = 0; k <= bk_depth; ++k) {
    const double raw = modulus_over(g, k, opts.modulus_radii, pool);
    rep.raw.push_back(raw);
    const double bk =
        clamp_bk(raw, k, prev, k == 0 ? b0_cap : std::numeric_limits<double>::infinity());
    rep.b.push_back(bk);
    prev = bk;
  }
  for (int k = bk_depth + 1; k <= bk_extend; ++k) {
    prev = prev * 0.5 * (1.0 - 1e-6);
    rep.b.push_back(prev);
  }

  // Sampled check of the uniform-continuity inequality under the final b_k.
  for (int k = 0; k <= bk_depth; ++k) {
    const double hi = std::ldexp(1.0, -k);
    const double lo = 0.5 * hi;
    const double bk = rep.b[static_cast<std::size_t>(k)];
    const double bound = hi + 1e-12;
    for (const Vec& xi : pool.points) {
      for (int i = 0; i < 8; ++i) {
        const double r = lo + (hi - lo) * i / 8.0;
        const double sr = std::min(r + bk, hi);
        if (dist(g.inverse(scaled(Vec(xi), r)), g.inverse(scaled(Vec(xi), sr))) > bound)
          ++rep.violations;
      }
    }
  }

  // beta through (2^-k, b_k), constant b_0 from r = 1 on; alpha = r - beta.
  std::vector<RadialProfile::Breakpoint> beta_bps, alpha_bps;
  for (int k = bk_extend; k >= 0; --k) {
    const double r = std::ldexp(1.0, -k);
    const double bk = rep.b[static_cast<std::size_t>(k)];
    beta_bps.push_back({r, bk});
    alpha_bps.push_back({r, r - bk});
  }
  RadialProfile beta(std::move(beta_bps), 0.0, /*allow_flat_tail=*/true);
  RadialProfile alpha(std::move(alpha_bps), 1.0);

  auto core = std::make_shared<const GarayMap::Core>(
      std::move(g), std::move(beta), std::move(alpha), rep.b, std::move(rep), s, R, R_prime, X);
  return std::shared_ptr<const GarayMap>(new GarayMap(std::move(core), false));
}

nlohmann::json garay_to_json(const GarayMap& h) {
  nlohmann::json j;
  j["kind"] = "garay";
  j["R"] = h.R();
  j["R_prime"] = h.R_prime();
  j["scale"] = h.scale();
  j["rho"] = h.rho();
  j["collapse_depth"] = h.collapse().depth();
  j["truncation_target"] = h.truncation_target();
  j["cells"] = cells_to_json(h.collapse().cells());
  j["b"] = h.bk();
  j["beta"] = profile_to_json(h.beta());
  j["alpha"] = profile_to_json(h.alpha());
  j["fixed_samples"] = cloud_to_json(h.fixed_samples());
  j["modulus_violations"] = h.modulus().violations;
  return j;
}

}  // namespace attrkit
