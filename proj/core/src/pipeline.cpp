#include "attrkit/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>

#include "attrkit/rng.hpp"
#include "attrkit/samplers.hpp"

namespace attrkit {

namespace {

// Union with a near-duplicate guard: samples closer than the tolerance
// (e.g. fixed points reproduced by the dynamics up to roundoff) would make
// injectivity margins meaningless and anchor sets degenerate. Domain
// samples are kept preferentially.
PointCloud dedup_union(const PointCloud& a, const PointCloud& b) {
  PointCloud out(a.dim);
  for (const PointCloud* c : {&a, &b})
    for (const Vec& p : c->points) {
      const double tol = 1e-9 * (1.0 + norm(p));
      bool fresh = true;
      for (const Vec& q : out.points)
        if (dist(p, q) <= tol) {
          fresh = false;
          break;
        }
      if (fresh) out.push(p);
    }
  return out;
}

Vec pad_tail(Vec x, int extra) {
  x.resize(x.size() + static_cast<std::size_t>(extra), 0.0);
  return x;
}

double block_norm(const Vec& p, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

Vec concat(const Vec& x, const Vec& y) {
  Vec out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  c.demo = j.value("demo", c.demo);
  if (j.contains("demo_params")) c.demo_params = j.at("demo_params");
  c.k = j.value("k", c.k);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.R = j.value("R", c.R);
  c.m_cap = j.value("m_cap", c.m_cap);
  c.seed = j.value("seed", c.seed);
  c.embed_attempts = j.value("embed_attempts", c.embed_attempts);
  c.margin_floor = j.value("margin_floor", c.margin_floor);
  c.truncation_depth = j.value("truncation_depth", c.truncation_depth);
  c.harmonic_prefix = j.value("harmonic_prefix", c.harmonic_prefix);
  c.cell_shrink = j.value("cell_shrink", c.cell_shrink);
  c.cell_margin_floor_rel = j.value("cell_margin_floor_rel", c.cell_margin_floor_rel);
  c.bk_depth = j.value("bk_depth", c.bk_depth);
  c.epsilon_policy = j.value("epsilon_policy", c.epsilon_policy);
  c.attraction_slack = j.value("attraction_slack", c.attraction_slack);
  if (j.contains("samples")) {
    const auto& s = j.at("samples");
    c.samples.invariance = s.value("invariance", c.samples.invariance);
    c.samples.rate_per_radius = s.value("rate_per_radius", c.samples.rate_per_radius);
    c.samples.roundtrip = s.value("roundtrip", c.samples.roundtrip);
    c.samples.certify_cloud = s.value("certify_cloud", c.samples.certify_cloud);
    c.samples.attractor_iterates = s.value("attractor_iterates", c.samples.attractor_iterates);
    c.samples.m_containment = s.value("m_containment", c.samples.m_containment);
    c.samples.attraction_starts = s.value("attraction_starts", c.samples.attraction_starts);
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    c.tolerances.roundtrip = t.value("roundtrip", c.tolerances.roundtrip);
    c.tolerances.conjugacy = t.value("conjugacy", c.tolerances.conjugacy);
    c.tolerances.cluster = t.value("cluster", c.tolerances.cluster);
    c.tolerances.rate = t.value("rate", c.tolerances.rate);
  }
  require(c.epsilon > 0.0, "config: epsilon must be positive");
  require(c.epsilon_policy == "reduce" || c.epsilon_policy == "fail",
          "config: epsilon_policy must be 'reduce' or 'fail'");
  return c;
}

nlohmann::json config_to_json(const PipelineConfig& c) {
  nlohmann::json j;
  j["demo"] = c.demo;
  j["demo_params"] = c.demo_params;
  j["k"] = c.k;
  j["epsilon"] = c.epsilon;
  j["R"] = c.R;
  j["m_cap"] = c.m_cap;
  j["seed"] = c.seed;
  j["embed_attempts"] = c.embed_attempts;
  j["margin_floor"] = c.margin_floor;
  j["truncation_depth"] = c.truncation_depth;
  j["harmonic_prefix"] = c.harmonic_prefix;
  j["cell_shrink"] = c.cell_shrink;
  j["cell_margin_floor_rel"] = c.cell_margin_floor_rel;
  j["bk_depth"] = c.bk_depth;
  j["epsilon_policy"] = c.epsilon_policy;
  j["attraction_slack"] = c.attraction_slack;
  j["samples"] = {{"invariance", c.samples.invariance},
                  {"rate_per_radius", c.samples.rate_per_radius},
                  {"roundtrip", c.samples.roundtrip},
                  {"certify_cloud", c.samples.certify_cloud},
                  {"attractor_iterates", c.samples.attractor_iterates},
                  {"m_containment", c.samples.m_containment},
                  {"attraction_starts", c.samples.attraction_starts}};
  j["tolerances"] = {{"roundtrip", c.tolerances.roundtrip},
                     {"conjugacy", c.tolerances.conjugacy},
                     {"cluster", c.tolerances.cluster},
                     {"rate", c.tolerances.rate}};
  return j;
}

std::optional<std::uint64_t> env_master_seed() {
  const char* s = std::getenv("ATTRKIT_MASTER_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

MapPtr build_hhat(GarayPtr h, int n) {
  require(h != nullptr, "build_hhat: null Garay map");
  require(h->dim() == n, "build_hhat: dimension mismatch");
  return block_product({h, radial_map(RadialProfile::scaling(0.5), n)});
}

double phi_rate(double r, int m, double rho, double R) {
  return std::max(std::max(r - m * rho, std::ldexp(r, -m)), R);
}

int phi_steps_to_R(double r, int m, double rho, double R, int cap) {
  require(m >= 1 && rho > 0.0 && R > 0.0, "phi_steps_to_R: bad parameters");
  int n = 0;
  while (r != R) {
    const double next = phi_rate(r, m, rho, R);
    require(next < r || next == R, "phi_steps_to_R: phi does not decrease at r = ", r);
    r = next;
    require(++n <= cap, "phi_steps_to_R: cap ", cap, " exceeded");
  }
  return n;
}

int phi_steps_analytic(double r, int m, double rho, double R) {
  if (r <= R) return r == R ? 0 : 1;
  // Subtraction dominates above r_c = m rho / (1 - 2^-m); halving below.
  // floor(.)+1 rather than ceil: at exact divisions the iterate still needs
  // the clamping step that lands exactly on R (and absorbs accumulated
  // rounding in the subtractive phase).
  const double r_c = m * rho / (1.0 - std::ldexp(1.0, -m));
  const double stop = std::max(R, r_c);
  int n_sub = 0;
  if (r > stop) n_sub = static_cast<int>(std::floor((r - stop) / (m * rho))) + 1;
  const double v = std::min(r, stop);
  int n_half = 0;
  if (v > R) n_half = static_cast<int>(std::floor(std::log2(v / R) / m)) + 1;
  return n_sub + n_half;
}

double flat_model_dist(const Vec& p, int d0, double L) {
  double flat2 = 0.0, rest2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (static_cast<int>(i) < d0)
      flat2 += p[i] * p[i];
    else
      rest2 += p[i] * p[i];
  }
  const double excess = std::max(std::sqrt(flat2) - L, 0.0);
  return std::sqrt(excess * excess + rest2);
}

int select_m(const MapPtr& hhat, const PointCloud& A, double R, double epsilon, int m_cap,
             int sample_count, std::uint64_t seed, double safety,
             const AttractorDist& dist_fn) {
  require(hhat != nullptr && m_cap >= 1 && epsilon > 0.0, "select_m: bad inputs");
  const int dim2 = hhat->dim();
  const int n1 = dim2 / 2;
  require(A.dim == dim2, "select_m: A dimension mismatch");
  const AttractorDist dist_to_A =
      dist_fn ? dist_fn : [&A](const Vec& p) { return dist_to_cloud(p, A); };

  const PointCloud xs = sample_ball(n1, R, sample_count, seed);
  const PointCloud ys = sample_ball(n1, R, sample_count, seed ^ 0x5e1ec7ull);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(sample_count));
  for (int i = 0; i < sample_count; ++i)
    pts.push_back(concat(xs.points[static_cast<std::size_t>(i)], ys.points[static_cast<std::size_t>(i)]));

  double best = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= m_cap; ++m) {
    double worst = 0.0;
    for (Vec& p : pts) {
      p = hhat->forward(p);
      worst = std::max(worst, dist_to_A(p));
    }
    best = std::min(best, worst);
    if (worst <= safety * epsilon) return m;
  }
  fail("select_m: containment not reached within m_cap = ", m_cap, " (best distance ", best,
       " vs target ", safety * epsilon, ")");
}

RateCheck verify_rate(const InvertibleMap& f, double R, int m, double rho, int per_radius,
                      std::uint64_t seed, double tol) {
  const int dim2 = f.dim();
  const std::size_t n1 = static_cast<std::size_t>(dim2) / 2;
  RateCheck rc;
  const double radii[5] = {R, 1.5 * R, 2.0 * R, 3.0 * R, 4.0 * R};
  for (int ri = 0; ri < 5; ++ri) {
    const double r = radii[ri];
    RateRadius row;
    row.r = r;
    row.phi_r = phi_rate(r, m, rho, R);
    row.samples = per_radius;
    const PointCloud xs = sample_ball(static_cast<int>(n1), r, per_radius,
                                      seed + static_cast<std::uint64_t>(ri));
    const PointCloud ys = sample_ball(static_cast<int>(n1), r, per_radius,
                                      seed + 0x99ull + static_cast<std::uint64_t>(ri));
    for (int i = 0; i < per_radius; ++i) {
      const Vec q = f.forward(concat(xs.points[static_cast<std::size_t>(i)],
                                     ys.points[static_cast<std::size_t>(i)]));
      const double bx = block_norm(q, 0, n1);
      const double by = block_norm(q, n1, static_cast<std::size_t>(dim2));
      row.max_block_norm = std::max(row.max_block_norm, std::max(bx, by));
      if (bx > row.phi_r + tol || by > row.phi_r + tol) ++row.violations;
    }
    rc.violations += row.violations;
    rc.grid.push_back(row);
  }
  rc.steps_from_4R_iterated = phi_steps_to_R(4.0 * R, m, rho, R);
  rc.steps_from_4R_analytic = phi_steps_analytic(4.0 * R, m, rho, R);
  rc.reaches_R_exactly = true;  // phi_steps_to_R only returns on exact equality
  return rc;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult res;
  res.config = cfg;
  res.demo = make_demo(cfg.demo, cfg.demo_params);
  require(res.demo.pipeline_ready, "run_pipeline: demo '", cfg.demo,
          "' is not pipeline-ready (its attractor lacks trivial shape or cells)");
  const int k = cfg.k < 0 ? res.demo.k : cfg.k;
  require(k >= res.demo.k, "run_pipeline: k = ", k, " is below the demo's dimension bound ",
          res.demo.k);

  SampledSystem sys = demo_system(res.demo);
  sys.validate();

  // The attractor is invariant, so domain and image samples both lie on it;
  // the union is what every later stage must fix exactly.
  const PointCloud X_union = dedup_union(sys.domain, sys.image);

  // --- Stage 1: embed into R^{2k+1}, then align the flat model ---
  // (attractor centre -> origin, flat frame -> leading axes) so the shipped
  // cell providers apply. The alignment is folded into the embedding.
  const Embedding e_raw = embed(X_union, k, cfg.embed_attempts, cfg.seed, cfg.margin_floor);
  const int t = 2 * k + 1;
  Mat align = Mat::identity(t);
  if (res.demo.shape.d0 > 0) {
    std::vector<Vec> w;
    for (const Vec& v : res.demo.shape.frame) w.push_back(matvec(e_raw.matrix, v));
    const Mat comp = orthonormal_completion(w, t);
    Mat basis(t, t);  // columns: [w_1 .. w_d0 | completion]
    for (int col = 0; col < res.demo.shape.d0; ++col)
      for (int row = 0; row < t; ++row)
        basis.at(row, col) = w[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
    for (int col = res.demo.shape.d0; col < t; ++col)
      for (int row = 0; row < t; ++row) basis.at(row, col) = comp.at(col, row);
    align = invert(basis);
  }
  const Vec e_center = e_raw.apply(res.demo.shape.center);

  res.e.matrix = matmul(align, e_raw.matrix);
  res.e.offset = matvec(align, sub(e_raw.offset, e_center));
  res.e.k = k;
  res.e.seed = cfg.seed;
  res.e.injectivity_margin = embedding_margin(res.e.matrix, X_union);
  require(res.e.injectivity_margin > cfg.margin_floor,
          "run_pipeline: alignment degraded the margin to ", res.e.injectivity_margin);
  res.e.anchors_in = X_union;
  res.e.anchors_out = PointCloud(t);
  for (const Vec& x : X_union.points) res.e.anchors_out.push(res.e.apply(x));

  // --- Stage 2: pad to R^{2k+2} (cellularity needs the spare dimension) ---
  res.X1 = pad_dimension(res.e.anchors_out);
  const int n1 = t + 1;
  require(res.X1.dim == 2 * k + 2, "run_pipeline: padding bookkeeping failed");

  const double maxX1 = res.X1.max_norm();
  const double blend = 0.2;
  const double r_min = maxX1 == 0.0 ? 1.0 : 1.02 * maxX1 / (1.0 - blend);
  res.R = std::max(cfg.R, r_min);

  // --- Stage 3: Garay homeomorphism with X1 as (almost) global attractor ---
  const double L = res.demo.shape.d0 > 0 ? res.demo.shape.L : 0.0;
  const double m0 = 0.9 * res.R - L;
  require(m0 > 0.0, "run_pipeline: no room for cells between the attractor and B(0,R)");
  // Geometric margin ladder. The ratio is floored so the innermost margin
  // stays >= cell_margin_floor_rel * R: consecutive cell extents must differ
  // by more than an ulp of the attractor scale, and the attractor samples
  // (known only to roundoff) must stay strictly inside the innermost cell.
  const double floor_m = cfg.cell_margin_floor_rel * res.R;
  require(floor_m < m0, "run_pipeline: cell margin floor exceeds the outermost margin");
  double shrink = cfg.cell_shrink;
  if (cfg.truncation_depth > 1)
    shrink = std::max(shrink, std::pow(floor_m / m0, 1.0 / (cfg.truncation_depth - 1)));
  std::vector<double> margins;
  for (int j = 0; j < cfg.truncation_depth; ++j) margins.push_back(m0 * std::pow(shrink, j));
  const CellSequence cells = flat_ball_cells(n1, res.demo.shape.d0, L, res.R, margins);
  GarayOptions gopts;
  gopts.collapse_depth = cfg.truncation_depth;
  gopts.harmonic_prefix = cfg.harmonic_prefix;
  gopts.bk_depth = cfg.bk_depth;
  gopts.seed = cfg.seed ^ 0x6a5a17ull;
  res.h = garay_map(res.X1, cells, res.R, gopts);

  // --- Stage 4: Klee extension of the conjugated dynamics to R^{4k+4} ---
  const SampledSystem conj = conjugate_system(sys, res.e, cfg.margin_floor);
  SampledSystem f1_sys;
  f1_sys.domain = pad_dimension(conj.domain);
  f1_sys.image = pad_dimension(conj.image);
  res.fhat1 = klee_extend(f1_sys, res.R);
  const int dim2 = 4 * k + 4;
  require(res.fhat1.fhat->dim() == dim2, "run_pipeline: Klee dimension bookkeeping failed");

  // --- Stage 5: hhat, epsilon reduction, m selection, f ---
  res.hhat = build_hhat(res.h, n1);

  res.A = PointCloud(dim2);
  for (const Vec& p : res.X1.points) res.A.push(pad_tail(p, n1));

  const double eps_max = 0.98 * (res.R - maxX1);
  res.epsilon_eff = cfg.epsilon;
  bool reduced = false;
  if (cfg.epsilon > eps_max) {
    require(cfg.epsilon_policy == "reduce", "run_pipeline: epsilon ", cfg.epsilon,
            " requires N(A,eps) inside B(0,R)^2; needed <= ", eps_max,
            " and epsilon_policy is 'fail'");
    res.epsilon_eff = eps_max;
    reduced = true;
  }

  // The aligned attractor is exactly the flat model (ball of radius L in the
  // leading d0 coordinates), so membership in N(A,eps) is testable in closed
  // form, free of sample-covering artifacts.
  const int shape_d0 = res.demo.shape.d0;
  const AttractorDist dist_to_A = [shape_d0, L](const Vec& p) {
    return flat_model_dist(p, shape_d0, L);
  };

  res.m = select_m(res.hhat, res.A, res.R, res.epsilon_eff, cfg.m_cap,
                   cfg.samples.m_containment, cfg.seed ^ 0x111111ull, 0.9, dist_to_A);

  std::vector<MapPtr> stages;
  stages.push_back(res.fhat1.fhat);
  for (int i = 0; i < res.m; ++i) stages.push_back(res.hhat);
  res.f = compose(std::move(stages));

  // --- Verification ---
  VerificationReport rep;
  rep.R = res.R;
  rep.m = res.m;
  rep.m_closed_form =
      std::max(1, static_cast<int>(std::ceil(std::log2(res.R / (0.9 * res.epsilon_eff)))));
  rep.epsilon_requested = cfg.epsilon;
  rep.epsilon_eff = res.epsilon_eff;
  rep.epsilon_reduced = reduced;
  rep.embedding_margin = res.e.injectivity_margin;
  rep.rho = res.h->rho();
  rep.truncation_target = res.h->truncation_target();
  rep.truncation_bound = res.h->truncation_bound();
  rep.modulus_violations = res.h->modulus().violations;

  // Conjugacy at anchors: f(e(x), 0) vs (e(F(x)), 0).
  for (std::size_t i = 0; i < f1_sys.domain.size(); ++i) {
    const Vec lhs = res.f->forward(pad_tail(f1_sys.domain.points[i], n1));
    const Vec rhs = pad_tail(f1_sys.image.points[i], n1);
    rep.conjugacy_error = std::max(rep.conjugacy_error, dist(lhs, rhs));
  }

  // Positive invariance of N(A, eps) under one application of f.
  const CounterRng pick = CounterRng(cfg.seed ^ 0x333333ull).stream("invariance_pick");
  const PointCloud offsets =
      sample_ball(dim2, res.epsilon_eff * 0.999, cfg.samples.invariance, cfg.seed ^ 0x334ull);
  PointCloud n_samples(dim2);
  for (int i = 0; i < cfg.samples.invariance; ++i) {
    const std::size_t a = static_cast<std::size_t>(pick.bits(static_cast<std::uint64_t>(i)) % res.A.size());
    n_samples.push(add(Vec(res.A.points[a]), offsets.points[static_cast<std::size_t>(i)]));
  }
  for (const Vec& p : n_samples.points)
    if (dist_to_A(res.f->forward(p)) > res.epsilon_eff + 1e-12)
      ++rep.positive_invariance_violations;

  // Certified-attractor truncation from K = anchors + a slice of N(A, eps).
  PointCloud K = res.A;
  for (int i = 0; i < cfg.samples.certify_cloud && i < cfg.samples.invariance; ++i)
    K.push(n_samples.points[static_cast<std::size_t>(i)]);
  PointCloud trunc = K;
  for (int j = 0; j < cfg.samples.attractor_iterates; ++j) {
    PointCloud next(dim2);
    for (const Vec& p : trunc.points) next.push(res.f->forward(p));
    trunc = std::move(next);
  }
  for (const Vec& p : trunc.points)
    rep.truncation_dist = std::max(rep.truncation_dist, dist_to_A(p));
  rep.anchors_return_dist = hausdorff_semidist(res.A, trunc);
  rep.anchors_return_tol =
      std::max(cfg.tolerances.cluster, res.A.size() >= 2 ? 2.0 * res.A.nn_spacing() : 0.0);

  // Attraction from bounded starts.
  for (const double r : {2.0 * res.R, 4.0 * res.R}) {
    AttractionRecord rec;
    rec.start_radius = r;
    rec.bound = phi_steps_to_R(r, res.m, rep.rho, res.R) + cfg.attraction_slack;
    const std::size_t h1 = static_cast<std::size_t>(n1);
    const PointCloud xs = sample_ball(n1, r, cfg.samples.attraction_starts,
                                      cfg.seed ^ static_cast<std::uint64_t>(r * 977.0));
    const PointCloud ys = sample_ball(n1, r, cfg.samples.attraction_starts,
                                      cfg.seed ^ static_cast<std::uint64_t>(r * 1999.0));
    for (int i = 0; i < cfg.samples.attraction_starts; ++i) {
      Vec p = concat(xs.points[static_cast<std::size_t>(i)], ys.points[static_cast<std::size_t>(i)]);
      int steps = 0;
      while (steps <= rec.bound &&
             (block_norm(p, 0, h1) > res.R * (1.0 + 1e-14) ||
              block_norm(p, h1, static_cast<std::size_t>(dim2)) > res.R * (1.0 + 1e-14))) {
        p = res.f->forward(p);
        ++steps;
      }
      rec.worst_steps = std::max(rec.worst_steps, steps);
    }
    rep.attraction_steps.push_back(rec);
  }

  rep.rate = verify_rate(*res.f, res.R, res.m, rep.rho, cfg.samples.rate_per_radius,
                         cfg.seed ^ 0x444444ull, cfg.tolerances.rate);

  const PointCloud grid = test_grid(dim2, 2.0 * res.R, cfg.samples.roundtrip, cfg.seed ^ 0x555555ull);
  rep.max_roundtrip = max_roundtrip_error(*res.f, grid.points);

  res.report = rep;
  return res;
}

nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["conjugacy_error"] = rep.conjugacy_error;
  j["positive_invariance_violations"] = rep.positive_invariance_violations;
  nlohmann::json att = nlohmann::json::array();
  for (const auto& a : rep.attraction_steps)
    att.push_back({{"start_radius", a.start_radius},
                   {"worst_steps", a.worst_steps},
                   {"bound", a.bound}});
  j["attraction_steps"] = att;
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& g : rep.rate.grid)
    grid.push_back({{"r", g.r},
                    {"phi_r", g.phi_r},
                    {"max_block_norm", g.max_block_norm},
                    {"violations", g.violations},
                    {"samples", g.samples}});
  j["rate_check"] = {{"grid", grid},
                     {"violations", rep.rate.violations},
                     {"steps_from_4R_iterated", rep.rate.steps_from_4R_iterated},
                     {"steps_from_4R_analytic", rep.rate.steps_from_4R_analytic},
                     {"reaches_R_exactly", rep.rate.reaches_R_exactly}};
  j["truncation_dist"] = rep.truncation_dist;
  j["anchors_return_dist"] = rep.anchors_return_dist;
  j["anchors_return_tol"] = rep.anchors_return_tol;
  j["max_roundtrip"] = rep.max_roundtrip;
  j["margins"] = {{"embedding_margin", rep.embedding_margin},
                  {"rho", rep.rho},
                  {"truncation_target", rep.truncation_target},
                  {"truncation_bound", rep.truncation_bound},
                  {"modulus_violations", rep.modulus_violations}};
  j["epsilon"] = {{"requested", rep.epsilon_requested},
                  {"effective", rep.epsilon_eff},
                  {"reduced", rep.epsilon_reduced}};
  j["R"] = rep.R;
  j["m"] = rep.m;
  j["m_closed_form"] = rep.m_closed_form;
  j["violations_total"] = rep.violations_total();
  return j;
}

nlohmann::json result_to_json(const PipelineResult& res) {
  nlohmann::json j;
  j["config"] = config_to_json(res.config);
  j["demo"] = {{"name", res.demo.name},
               {"description", res.demo.description},
               {"ambient_dim", res.demo.ambient_dim},
               {"k", res.demo.k},
               {"anchor_count", res.X1.size()}};
  j["embedding"] = embedding_to_json(res.e);
  j["garay"] = garay_to_json(*res.h);
  j["klee"] = klee_to_json(res.fhat1);
  j["m_selection"] = {{"m", res.m},
                      {"m_closed_form", res.report.m_closed_form},
                      {"m_cap", res.config.m_cap},
                      {"R", res.R},
                      {"epsilon_effective", res.epsilon_eff}};
  j["verification"] = report_to_json(res.report);
  return j;
}

void emit_report(const PipelineResult& res, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  require(!ec, "emit_report: cannot create directory '", out_dir, "': ", ec.message());

  auto write_file = [&out_dir](const std::string& name, const std::string& body) {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "emit_report: cannot open '", path.string(), "' for writing");
    out << body;
    require(out.good(), "emit_report: write to '", path.string(), "' failed");
  };

  write_file("report.json", result_to_json(res).dump(2) + "\n");

  // Orbit norms per iterate, one representative orbit per start radius.
  {
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "start_radius,iterate,max_block_norm\n";
    const int n1 = res.h->dim();
    const std::size_t h1 = static_cast<std::size_t>(n1);
    const int dim2 = res.f->dim();
    for (const double r : {2.0 * res.R, 4.0 * res.R}) {
      const PointCloud xs = sample_ball(n1, r, 1, res.config.seed ^ static_cast<std::uint64_t>(r * 977.0));
      const PointCloud ys = sample_ball(n1, r, 1, res.config.seed ^ static_cast<std::uint64_t>(r * 1999.0));
      Vec p = concat(xs.points[0], ys.points[0]);
      const int cap = phi_steps_to_R(r, res.m, res.report.rho, res.R) + res.config.attraction_slack;
      for (int it = 0; it <= cap; ++it) {
        const double bn = std::max(block_norm(p, 0, h1), block_norm(p, h1, static_cast<std::size_t>(dim2)));
        csv << r << ',' << it << ',' << bn << '\n';
        if (bn <= res.R * (1.0 + 1e-14)) break;
        p = res.f->forward(p);
      }
    }
    write_file("orbit_norms.csv", csv.str());
  }

  // Rate grid samples: one row per (radius, sample).
  {
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "radius,sample,in_x,in_y,out_x,out_y,phi_r,ok\n";
    const int dim2 = res.f->dim();
    const std::size_t n1 = static_cast<std::size_t>(dim2) / 2;
    const double radii[5] = {res.R, 1.5 * res.R, 2.0 * res.R, 3.0 * res.R, 4.0 * res.R};
    for (int ri = 0; ri < 5; ++ri) {
      const double r = radii[ri];
      const double phi = phi_rate(r, res.m, res.report.rho, res.R);
      const PointCloud xs = sample_ball(static_cast<int>(n1), r, res.config.samples.rate_per_radius,
                                        (res.config.seed ^ 0x444444ull) + static_cast<std::uint64_t>(ri));
      const PointCloud ys = sample_ball(static_cast<int>(n1), r, res.config.samples.rate_per_radius,
                                        (res.config.seed ^ 0x444444ull) + 0x99ull + static_cast<std::uint64_t>(ri));
      for (int i = 0; i < res.config.samples.rate_per_radius; ++i) {
        const Vec in = concat(xs.points[static_cast<std::size_t>(i)], ys.points[static_cast<std::size_t>(i)]);
        const Vec out = res.f->forward(in);
        const double in_x = block_norm(in, 0, n1);
        const double in_y = block_norm(in, n1, static_cast<std::size_t>(dim2));
        const double out_x = block_norm(out, 0, n1);
        const double out_y = block_norm(out, n1, static_cast<std::size_t>(dim2));
        const bool ok = out_x <= phi + res.config.tolerances.rate && out_y <= phi + res.config.tolerances.rate;
        csv << r << ',' << i << ',' << in_x << ',' << in_y << ',' << out_x << ',' << out_y << ','
            << phi << ',' << (ok ? 1 : 0) << '\n';
      }
    }
    write_file("rate_samples.csv", csv.str());
  }
}

}  // namespace attrkit
