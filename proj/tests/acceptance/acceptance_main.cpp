// Acceptance suite: runs every shipped verification property at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "attrkit/demos.hpp"
#include "attrkit/rng.hpp"
#include "attrkit/pipeline.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %d: %s  [%s]\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Vec concat(const Vec& x, const Vec& y) {
  Vec out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::pair<double, double> block_norms(const Vec& p) {
  const std::size_t n = p.size() / 2;
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) a += p[i] * p[i];
  for (std::size_t i = n; i < p.size(); ++i) b += p[i] * p[i];
  return {std::sqrt(a), std::sqrt(b)};
}

double segment_dist(const GarayDemo& demo, const Vec& p) {
  if (demo.shape.d0 == 0) return dist(p, demo.shape.center);
  const double t = std::clamp(dot(sub(Vec(p), demo.shape.center), demo.shape.frame[0]),
                              -demo.shape.L, demo.shape.L);
  return dist(p, axpy(Vec(demo.shape.center), t, demo.shape.frame[0]));
}

PipelineConfig acceptance_config(const std::string& demo) {
  PipelineConfig cfg;
  cfg.demo = demo;
  cfg.epsilon = 0.05;
  cfg.seed = 20260810;
  return cfg;
}

GarayPtr acceptance_garay(const GarayDemo& demo) {
  GarayOptions opts;
  opts.collapse_depth = 12;
  opts.harmonic_prefix = 4;
  opts.bk_depth = 16;
  return garay_map(demo.X, demo.cells, demo.R, opts);
}

// --- criteria ---

void criterion_1_roundtrip(const PipelineResult& arc) {
  const double tol = 1e-9;
  double worst = 0.0;
  std::string worst_name = "-";
  auto probe = [&](const char* name, const InvertibleMap& m) {
    const PointCloud grid = test_grid(m.dim(), 2.0 * arc.R, 1000, 0xAC5Eull);
    const double err = max_roundtrip_error(m, grid.points);
    if (err > worst) {
      worst = err;
      worst_name = name;
    }
  };
  probe("compress", *arc.fhat1.c);
  probe("klee_fhat", *arc.fhat1.fhat);
  probe("garay_h", *arc.h);
  probe("hhat", *arc.hhat);
  probe("pipeline_f", *arc.f);
  criterion(1, "round-trip inversion <= 1e-9 over 1000 points per map", worst <= tol,
            "worst " + fmt(worst) + " (" + worst_name + ")");
}

void criterion_2_compress() {
  const double r_star = 0.5, big_r = 1.0;
  const MapPtr c = build_compress(r_star, big_r, 3);
  int violations = 0;
  for (double r : {2.0 * big_r, 3.0 * big_r, 5.0 * big_r}) {
    const PointCloud sphere = sample_sphere(3, r, 500, 0xC0ull + static_cast<std::uint64_t>(r));
    for (const Vec& p : sphere.points)
      if (norm(c->forward(p)) > r / 2.0 + 1e-9) ++violations;
  }
  int identity_breaks = 0;
  // Strictly inside |p| <= R*: sphere normalization rounds to R*(1 +- ulp),
  // so probe a hair below the boundary.
  PointCloud inner = sample_ball(3, r_star, 400, 0xC1ull);
  for (Vec& p : sample_sphere(3, r_star * (1.0 - 1e-12), 100, 0xC2ull).points)
    inner.push(std::move(p));
  for (const Vec& p : inner.points)
    if (c->forward(p) != p) ++identity_breaks;
  criterion(2, "compress: c(B(0,r)) in B(0,r/2), exact identity inside B(0,R*)",
            violations == 0 && identity_breaks == 0,
            std::to_string(violations) + " ball violations, " +
                std::to_string(identity_breaks) + " identity breaks");
}

void criterion_3_chain() {
  const SampledSystem sys = SampledSystem::from_map(rotation_map(2, 0, 1, 1.0),
                                                    sample_ball(2, 0.6, 40, 0xC3ull));
  const KleeExtension ext = klee_extend(sys, 1.0);
  int violations = 0;
  for (double r : {1.0, 2.0}) {
    const PointCloud xs = sample_ball(2, r, 500, 0xC4ull);
    const PointCloud ys = sample_ball(2, r, 500, 0xC5ull);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Vec in = concat(xs.points[i], ys.points[i]);
      const auto [f1x, f1y] = block_norms(ext.f1->forward(in));
      const auto [gx, gy] = block_norms(ext.g->forward(in));
      const auto [fx, fy] = block_norms(ext.fhat->forward(in));
      if (f1x > r + 1e-9 || f1y > 2.0 * r + 1e-9) ++violations;
      if (gx > 2.0 * r + 1e-9 || gy > 2.0 * r + 1e-9) ++violations;
      if (fx > r + 1e-9 || fy > r + 1e-9) ++violations;
    }
  }
  criterion(3, "containment chain f1 (r,2r), g (2r,2r), fhat (r,r)", violations == 0,
            std::to_string(violations) + " violations over 1000 samples");
}

void criterion_4_garay() {
  bool ok = true;
  std::string detail;
  for (const std::string name : {"point", "segment"}) {
    const GarayDemo demo = make_garay_demo(name);
    const GarayPtr h = acceptance_garay(demo);
    const double rho = h->rho();

    double sphere_err = 0.0;
    for (double factor : {1.0, 1.5, 2.0}) {
      const double r = factor * demo.R;
      const PointCloud sphere =
          sample_sphere(demo.X.dim, r, 200, 0xC6ull + static_cast<std::uint64_t>(10 * factor));
      for (const Vec& x : sphere.points)
        sphere_err = std::max(sphere_err, std::abs(norm(h->forward(x)) - (r - rho)));
    }

    const double eps = 1e-2;
    const int bound = static_cast<int>(std::ceil(2.0 * demo.R / rho)) + 400;
    int entered = 0, total = 0;
    const PointCloud starts = sample_ball(demo.X.dim, 2.0 * demo.R, 220, 0xC7ull);
    for (Vec p : starts.points) {
      if (segment_dist(demo, p) <= eps) continue;
      if (total == 100) break;
      ++total;
      int steps = 0;
      while (segment_dist(demo, p) > eps && steps <= bound) {
        p = h->forward(p);
        ++steps;
      }
      bool inside = steps <= bound;
      for (int extra = 0; inside && extra < 40; ++extra) {
        p = h->forward(p);
        inside = segment_dist(demo, p) <= eps;
      }
      if (inside) ++entered;
    }
    ok = ok && sphere_err <= 1e-9 && entered == total && total == 100;
    detail += name + ": sphere err " + fmt(sphere_err) + ", orbits " +
              std::to_string(entered) + "/" + std::to_string(total) + "; ";
  }
  criterion(4, "Garay sphere contraction and orbit attraction", ok, detail);
}

void criterion_5_pipeline(const PipelineResult& res, double elapsed_s) {
  const auto& rep = res.report;
  const bool ok = rep.conjugacy_error <= 1e-6 && rep.positive_invariance_violations == 0 &&
                  rep.truncation_dist <= res.epsilon_eff && elapsed_s <= 120.0;
  criterion(5, "pipeline on " + res.demo.name + ": conjugacy, invariance, A_f in N(A,eps)", ok,
            "conj " + fmt(rep.conjugacy_error) + ", inv viol " +
                std::to_string(rep.positive_invariance_violations) + ", trunc " +
                fmt(rep.truncation_dist) + " vs eps " + fmt(res.epsilon_eff) + ", " +
                fmt(elapsed_s) + " s");
}

void criterion_6_rate(const PipelineResult& fixed, const PipelineResult& arc,
                      const PipelineResult& disk) {
  bool ok = true;
  std::string detail;
  for (const PipelineResult* res : {&fixed, &arc, &disk}) {
    const RateCheck& rc = res->report.rate;
    ok = ok && rc.violations == 0 && rc.reaches_R_exactly &&
         rc.steps_from_4R_iterated <= rc.steps_from_4R_analytic;
    detail += res->demo.name + ": " + std::to_string(rc.violations) + " viol, steps " +
              std::to_string(rc.steps_from_4R_iterated) + "<=" +
              std::to_string(rc.steps_from_4R_analytic) + "; ";
  }
  criterion(6, "rate phi(r) = max(r-m rho, r/2^m, R) on 5 radii x 200 samples", ok, detail);
}

void criterion_7_oracles() {
  const SampledSystem sys = SampledSystem::from_map(radial_map(RadialProfile::scaling(0.5), 2),
                                                    sample_ball(2, 1.0, 12, 0xC8ull));
  PointCloud k = sample_ball(2, 1.0, 80, 0xC9ull);
  for (Vec& p : sample_sphere(2, 1.0, 40, 0xCAull).points) k.push(std::move(p));
  const CertifiedAttractor cert = certify_attractor(sys, k, 30);
  double max_norm = 0.0;
  for (const Vec& p : cert.cloud.points) max_norm = std::max(max_norm, norm(p));
  const bool certify_ok = max_norm <= std::ldexp(1.0, -30) * (1.0 + 1e-12);

  OmegaOptions opts;
  const PointCloud omega = omega_limit(sys, sample_ball(2, 1.0, 20, 0xCBull), opts);
  const bool omega_ok = omega.size() == 1 && norm(omega.points[0]) <= opts.cluster_tol;

  // Brute-force oracle comparison on 20 random small clouds.
  const CounterRng rng = CounterRng(0xCCull).stream("oracle");
  bool hausdorff_ok = true;
  for (std::uint64_t t = 0; t < 20 && hausdorff_ok; ++t) {
    PointCloud a(3), b(3);
    const int na = 1 + static_cast<int>(rng.bits(2 * t) % 10);
    const int nb = 1 + static_cast<int>(rng.bits(2 * t + 1) % 10);
    for (int i = 0; i < na; ++i) a.push(rng.gaussian_vec(1000 * t + static_cast<std::uint64_t>(i), 3));
    for (int i = 0; i < nb; ++i) b.push(rng.gaussian_vec(5000 * t + static_cast<std::uint64_t>(i), 3));
    double oracle = 0.0;
    for (const Vec& p : a.points) {
      double inf = std::numeric_limits<double>::infinity();
      for (const Vec& q : b.points) inf = std::min(inf, dist(p, q));
      oracle = std::max(oracle, inf);
    }
    hausdorff_ok = hausdorff_semidist(a, b) == oracle;
  }
  criterion(7, "attractor truncation, omega limit, and Hausdorff oracle equivalence",
            certify_ok && omega_ok && hausdorff_ok,
            "max norm " + fmt(max_norm) + ", omega clusters " + std::to_string(omega.size()) +
                ", hausdorff " + (hausdorff_ok ? "exact" : "mismatch"));
}

void criterion_8_witness() {
  const Semiflow flow = [](double t, const Vec& p) { return scaled(Vec(p), std::exp(-t)); };
  PointCloud a(2);
  a.push({0.0, 0.0});
  for (int i = 1; i < 25; ++i)
    a.push({0.02 * std::cos(0.7 * i) * i / 25.0, 0.02 * std::sin(0.9 * i) * i / 25.0});
  const SemiflowWitness w = contraction_witness(flow, a, 0, 0.5);

  double endpoint_err = 0.0, seam_err = 0.0;
  int pairs = 0;
  for (const Vec& p : a.points) {
    endpoint_err = std::max(endpoint_err, dist(w.eval(p, 0.0), p));
    endpoint_err = std::max(endpoint_err, dist(w.eval(p, 1.0), flow(w.T, w.q)));
    double lo = 0.5, hi = 0.5;
    for (int d = 0; d < 4; ++d) {
      lo = std::nextafter(lo, 0.0);
      hi = std::nextafter(hi, 1.0);
      seam_err = std::max(seam_err, dist(w.eval(p, lo), w.eval(p, hi)));
      ++pairs;
    }
  }
  criterion(8, "semiflow witness endpoints and seam continuity at t = 1/2",
            endpoint_err <= 1e-12 && seam_err <= 1e-12 && pairs == 100,
            "endpoint " + fmt(endpoint_err) + ", seam " + fmt(seam_err) + ", " +
                std::to_string(pairs) + " pairs");
}

void criterion_9_collapse() {
  const int depth = 6;
  std::vector<double> radii;
  for (int j = 0; j < depth; ++j) radii.push_back(0.9 * std::pow(0.45, j));
  const CellSequence cells = round_cells(3, 1.0, radii);
  const CollapseMap g = brown_collapse(cells, 1.0, depth);

  const double inner_r = radii.back();
  PointCloud inner = sample_ball(3, inner_r, 200, 0xCDull);
  for (Vec& p : sample_sphere(3, inner_r, 100, 0xCEull).points) inner.push(std::move(p));
  int violations = 0;
  for (const Vec& p : inner.points)
    if (norm(g.forward(p)) > 1.0 / (depth + 1) * (1.0 + 1e-12)) ++violations;
  criterion(9, "truncated collapse maps the innermost cell into B(0, R/(J+1))",
            violations == 0, std::to_string(violations) + " violations at depth 6");
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto run_timed = [](const PipelineConfig& cfg, double& seconds) {
    const auto t0 = clock::now();
    PipelineResult res = run_pipeline(cfg);
    seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return res;
  };

  try {
    double t_fixed = 0.0, t_arc = 0.0, t_disk = 0.0;
    const PipelineResult fixed = run_timed(acceptance_config("fixed_point"), t_fixed);
    const PipelineResult arc = run_timed(acceptance_config("arc_morse"), t_arc);
    const PipelineResult disk = run_timed(acceptance_config("disk_rotation"), t_disk);

    criterion_1_roundtrip(arc);
    criterion_2_compress();
    criterion_3_chain();
    criterion_4_garay();
    criterion_5_pipeline(fixed, t_fixed);
    criterion_5_pipeline(arc, t_arc);
    criterion_5_pipeline(disk, t_disk);
    criterion_6_rate(fixed, arc, disk);
    criterion_7_oracles();
    criterion_8_witness();
    criterion_9_collapse();
  } catch (const std::exception& err) {
    std::printf("FAIL  acceptance aborted: %s\n", err.what());
    return 99;
  }

  std::printf("%s  (%d criterion failures)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures;
}
