#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "attrkit/demos.hpp"
#include "attrkit/embedding.hpp"
#include "attrkit/garay.hpp"
#include "attrkit/klee.hpp"

namespace attrkit {

struct PipelineSampleCounts {
  int invariance = 1000;
  int rate_per_radius = 200;
  int roundtrip = 1000;
  int certify_cloud = 300;
  int attractor_iterates = 30;
  int m_containment = 400;
  int attraction_starts = 50;
};

struct PipelineTolerances {
  double roundtrip = 1e-9;
  double conjugacy = 1e-6;
  double cluster = 1e-3;
  double rate = 1e-9;
};

struct PipelineConfig {
  std::string demo = "fixed_point";
  nlohmann::json demo_params = nlohmann::json::object();
  int k = -1;  // -1: use the demo's bound
  double epsilon = 0.05;
  double R = 0.0;  // 0: derived from the embedded attractor
  int m_cap = 64;
  std::uint64_t seed = 20260810;
  int embed_attempts = 64;
  double margin_floor = 1e-4;
  int truncation_depth = 28;
  int harmonic_prefix = 4;
  double cell_shrink = 0.15;      // geometric margin ratio of the cell ladder
  double cell_margin_floor_rel = 1e-12;  // innermost margin floor, relative to R
  int bk_depth = 22;
  std::string epsilon_policy = "reduce";  // "reduce" | "fail"
  int attraction_slack = 5;
  PipelineSampleCounts samples;
  PipelineTolerances tolerances;
};

PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& cfg);

/// ATTRKIT_MASTER_SEED, when set, overrides the config seed.
std::optional<std::uint64_t> env_master_seed();

struct RateRadius {
  double r = 0.0;
  double phi_r = 0.0;
  double max_block_norm = 0.0;
  int violations = 0;
  int samples = 0;
};

struct RateCheck {
  std::vector<RateRadius> grid;
  int violations = 0;
  int steps_from_4R_iterated = 0;
  int steps_from_4R_analytic = 0;
  bool reaches_R_exactly = false;
};

struct AttractionRecord {
  double start_radius = 0.0;
  int worst_steps = 0;
  int bound = 0;
};

struct VerificationReport {
  double conjugacy_error = 0.0;
  int positive_invariance_violations = 0;
  std::vector<AttractionRecord> attraction_steps;
  RateCheck rate;
  double truncation_dist = 0.0;      // semidist(f^j(K), A)
  double anchors_return_dist = 0.0;  // semidist(A, f^j(K)) with K containing A
  double anchors_return_tol = 0.0;
  double max_roundtrip = 0.0;
  double embedding_margin = 0.0;
  double rho = 0.0;
  double truncation_target = 0.0;  // collapsed image bound, working coords
  double truncation_bound = 0.0;   // R'/(J+1), working coords
  int modulus_violations = 0;
  double epsilon_requested = 0.0;
  double epsilon_eff = 0.0;
  bool epsilon_reduced = false;
  double R = 0.0;
  int m = 0;
  int m_closed_form = 0;

  int violations_total() const { return positive_invariance_violations + rate.violations; }
};

struct PipelineResult {
  PipelineConfig config;
  DemoSystem demo;
  Embedding e;       // embedding composed with the flat-shape alignment
  PointCloud X1;     // embedded + padded attractor samples (Garay dimension)
  PointCloud A;      // X1 x {0}, in the pipeline dimension 4k+4
  GarayPtr h;
  KleeExtension fhat1;
  MapPtr hhat;
  MapPtr f;
  int m = 0;
  double R = 0.0;
  double epsilon_eff = 0.0;
  VerificationReport report;
};

/// hhat(x,y) = (h(x), y/2) on R^{2n}.
MapPtr build_hhat(GarayPtr h, int n);

/// phi(r) = max(r - m rho, r / 2^m, R).
double phi_rate(double r, int m, double rho, double R);
/// Iterations of phi until exactly R (phi clamps to R in finitely many
/// steps); throws if cap is hit.
int phi_steps_to_R(double r, int m, double rho, double R, int cap = 1 << 20);
/// Closed-form upper bound on the above (subtractive phase + halving phase).
int phi_steps_analytic(double r, int m, double rho, double R);

/// Distance to the attractor; defaults to the sampled-cloud semidistance,
/// but the pipeline passes the exact flat-model distance where it knows it.
using AttractorDist = std::function<double(const Vec&)>;

/// Exact distance to the aligned attractor model: the ball of radius L in
/// the first d0 coordinates, zero elsewhere.
double flat_model_dist(const Vec& p, int d0, double L);

/// Smallest m <= m_cap with hhat^m(samples of B(0,R)^2) within
/// safety*epsilon of A. Errors with the best containment distance reached.
int select_m(const MapPtr& hhat, const PointCloud& A, double R, double epsilon, int m_cap,
             int sample_count, std::uint64_t seed, double safety = 0.9,
             const AttractorDist& dist_fn = nullptr);

RateCheck verify_rate(const InvertibleMap& f, double R, int m, double rho, int per_radius,
                      std::uint64_t seed, double tol);

PipelineResult run_pipeline(const PipelineConfig& cfg);

nlohmann::json report_to_json(const VerificationReport& rep);
nlohmann::json result_to_json(const PipelineResult& res);

/// Writes report.json plus the orbit-norm and rate CSV tables. Deterministic
/// given seeds (no timestamps).
void emit_report(const PipelineResult& res, const std::string& out_dir);

}  // namespace attrkit
