// Command-line front end: run the realization pipeline from a JSON config,
// re-verify stored results, and emit report files.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "attrkit/demos.hpp"
#include "attrkit/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolations = 2;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  attrkit::require(in.good(), "cannot open '", path, "'");
  nlohmann::json j;
  in >> j;
  return j;
}

attrkit::PipelineConfig config_with_env_seed(const nlohmann::json& j) {
  attrkit::PipelineConfig cfg = attrkit::config_from_json(j);
  if (auto seed = attrkit::env_master_seed()) {
    std::cerr << "note: ATTRKIT_MASTER_SEED overrides config seed (" << *seed << ")\n";
    cfg.seed = *seed;
  }
  return cfg;
}

void print_summary(const attrkit::PipelineResult& res) {
  const auto& rep = res.report;
  std::cout << "demo:                  " << res.demo.name << " (ambient R^"
            << res.demo.ambient_dim << ", k = " << res.e.k << ")\n";
  std::cout << "pipeline dimension:    " << res.f->dim() << "\n";
  std::cout << "anchors:               " << res.X1.size() << "\n";
  std::cout << "R:                     " << res.R << "\n";
  std::cout << "epsilon:               " << rep.epsilon_requested << " -> " << rep.epsilon_eff
            << (rep.epsilon_reduced ? "  (reduced so N(A,eps) fits in B(0,R)^2)" : "") << "\n";
  std::cout << "m:                     " << res.m << " (y-block closed form "
            << rep.m_closed_form << ")\n";
  std::cout << "rho:                   " << rep.rho << "\n";
  std::cout << "embedding margin:      " << rep.embedding_margin << "\n";
  std::cout << "conjugacy error:       " << rep.conjugacy_error << "\n";
  std::cout << "invariance violations: " << rep.positive_invariance_violations << "\n";
  std::cout << "rate violations:       " << rep.rate.violations << "\n";
  std::cout << "truncation semidist:   " << rep.truncation_dist << " (eps " << rep.epsilon_eff
            << ")\n";
  std::cout << "max round-trip error:  " << rep.max_roundtrip << "\n";
  for (const auto& a : rep.attraction_steps)
    std::cout << "attraction r=" << a.start_radius << ":     worst " << a.worst_steps
              << " steps (bound " << a.bound << ")\n";
}

int exit_code_for(const attrkit::PipelineResult& res) {
  return res.report.violations_total() == 0 ? kExitOk : kExitViolations;
}

int cmd_demo_list() {
  std::cout << "pipeline demos:\n";
  for (const std::string& name : attrkit::demo_names()) {
    const attrkit::DemoSystem d = attrkit::make_demo(name);
    std::cout << "  " << name << (d.pipeline_ready ? "" : "  [registry only]") << "\n    "
              << d.description << "\n    ambient R^" << d.ambient_dim << ", k = " << d.k
              << ", " << d.attractor_samples.size() << " attractor samples\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
  const attrkit::PipelineConfig cfg = config_with_env_seed(load_json(config_path));
  const attrkit::PipelineResult res = attrkit::run_pipeline(cfg);
  print_summary(res);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    attrkit::require(out.good(), "cannot open '", out_path, "' for writing");
    out << attrkit::result_to_json(res).dump(2) << "\n";
    std::cout << "result written to " << out_path << "\n";
  }
  return exit_code_for(res);
}

int cmd_verify(const std::string& result_path) {
  const nlohmann::json stored = load_json(result_path);
  const attrkit::PipelineConfig cfg = config_with_env_seed(stored.at("config"));
  const attrkit::PipelineResult res = attrkit::run_pipeline(cfg);
  print_summary(res);

  const nlohmann::json& old_ver = stored.at("verification");
  bool reproduced = true;
  auto check = [&](const char* field, double fresh, double stored_value) {
    if (fresh != stored_value) {
      std::cerr << "mismatch: " << field << " stored " << stored_value << ", recomputed "
                << fresh << "\n";
      reproduced = false;
    }
  };
  check("m", res.m, stored.at("m_selection").at("m").get<double>());
  check("conjugacy_error", res.report.conjugacy_error,
        old_ver.at("conjugacy_error").get<double>());
  check("violations_total", res.report.violations_total(),
        old_ver.at("violations_total").get<double>());
  check("truncation_dist", res.report.truncation_dist,
        old_ver.at("truncation_dist").get<double>());
  if (!reproduced) {
    std::cerr << "stored result does not reproduce\n";
    return kExitError;
  }
  std::cout << "stored result reproduces exactly\n";
  return exit_code_for(res);
}

int cmd_report(const std::string& result_path, const std::string& out_dir) {
  const nlohmann::json stored = load_json(result_path);
  const attrkit::PipelineConfig cfg = config_with_env_seed(stored.at("config"));
  const attrkit::PipelineResult res = attrkit::run_pipeline(cfg);
  attrkit::emit_report(res, out_dir);
  std::cout << "report written to " << out_dir << "/ (report.json, orbit_norms.csv, rate_samples.csv)\n";
  return exit_code_for(res);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attrkit: realize sampled attractors (with their dynamics) as global "
               "attractors of homeomorphisms of Euclidean space"};
  app.require_subcommand(1);

  auto* demo = app.add_subcommand("demo", "registry of built-in demo systems");
  demo->require_subcommand(1);
  demo->add_subcommand("list", "list demo systems");

  std::string config_path;
  std::string run_out = "result.json";
  auto* run = app.add_subcommand("run", "run the pipeline from a JSON config");
  run->add_option("--config", config_path, "pipeline config JSON")->required();
  run->add_option("--out", run_out, "where to write the result JSON");

  std::string verify_result;
  auto* verify = app.add_subcommand("verify", "re-run verification for a stored result");
  verify->add_option("--result", verify_result, "result JSON from 'run'")->required();

  std::string report_result;
  std::string report_out;
  auto* report = app.add_subcommand("report", "emit report.json and CSV tables");
  report->add_option("--result", report_result, "result JSON from 'run'")->required();
  report->add_option("--out", report_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (demo->parsed()) return cmd_demo_list();
    if (run->parsed()) return cmd_run(config_path, run_out);
    if (verify->parsed()) return cmd_verify(verify_result);
    if (report->parsed()) return cmd_report(report_result, report_out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
