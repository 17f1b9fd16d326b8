#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "outerpress/errors.hpp"
#include "outerpress/fit.hpp"
#include "outerpress/harness/config.hpp"
#include "outerpress/harness/presets.hpp"
#include "outerpress/harness/report.hpp"
#include "outerpress/harness/run_io.hpp"
#include "outerpress/harness/runner.hpp"
#include "outerpress/harness/verify.hpp"

namespace op = outerpress;
namespace oh = outerpress::harness;

namespace {

// Exit codes: 0 completed / pass, 1 failure or bad input, 2 config error, 3 floor breach,
// 4 volume collapse.
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& out_dir, bool quiet) {
  oh::RunConfig config;
  try {
    if (!config_path.empty()) {
      config = oh::load_config(config_path);
    } else if (!preset.empty()) {
      config = oh::preset_config(preset);
    } else {
      std::cerr << "error: run needs --config PATH or --preset NAME\n";
      return kConfigError;
    }
  } catch (const oh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  oh::RunOutcome outcome;
  try {
    outcome = oh::execute(config);
  } catch (const oh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  oh::write_artifacts(out_dir, config, outcome);
  const auto& s = outcome.summary;
  if (!quiet) {
    std::printf("status %s at t = %.6g after %zu steps (%.2f s)\n", oh::to_string(s.status).c_str(), s.final_time,
                s.steps, s.wall_clock_seconds);
    if (s.stationary) {
      std::printf("v_hat %.12g theta_hat %.12g, final means v %.12g theta %.12g\n", s.stationary->v_hat,
                  s.stationary->theta_hat, s.final_v_mean, s.final_theta_mean);
    }
    if (s.decay_int_u2.fit) {
      std::printf("decay rate of int u^2: %.5g (r^2 %.6f)\n", s.decay_int_u2.fit->lambda,
                  s.decay_int_u2.fit->r_squared);
    }
    std::printf("artifacts in %s\n", out_dir.c_str());
  }
  if (!s.message.empty()) std::cerr << s.message << "\n";
  return oh::exit_code(s.status);
}

int cmd_verify(const std::string& suite, bool quiet) {
  std::vector<int> ids;
  try {
    ids = oh::suite_criteria(suite);
  } catch (const op::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  const auto results = oh::run_criteria(ids, oh::suite_threads());
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    if (!quiet || !r.passed) std::cout << oh::format_result(r) << "\n";
  }
  std::cout << "suite " << suite << ": " << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : kFailure;
}

int cmd_fit(const std::string& csv, const std::string& column, std::optional<double> start,
            std::optional<double> end) {
  try {
    const oh::Table table = oh::read_csv(csv);
    const auto& t = table.column("t");
    const auto& y = table.column(column);
    op::WindowPolicy policy;
    policy.t_start = start;
    policy.t_end = end;
    const op::DecayFit fit = op::fit_decay_rate(t, y, policy);
    nlohmann::json j;
    j["column"] = column;
    j["lambda"] = fit.lambda;
    j["r_squared"] = fit.r_squared;
    j["t_start"] = fit.t_start;
    j["t_end"] = fit.t_end;
    j["points"] = fit.points;
    std::cout << j.dump(2) << "\n";
    return 0;
  } catch (const op::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int cmd_report(const std::string& dir) {
  try {
    std::cout << oh::render_report(dir);
    return 0;
  } catch (const op::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian compressible gas solver with outer-pressure boundaries"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Print only failures and the final status");

  auto* run = app.add_subcommand("run", "Run a scenario and write artifacts");
  std::string config_path, preset, out_dir = "run";
  auto* config_opt =
      run->add_option("--config", config_path, "Config file (flat key = value)")->check(CLI::ExistingFile);
  std::string preset_help = "Preset name:";
  for (const auto& n : oh::preset_names()) preset_help += " " + n;
  run->add_option("--preset", preset, preset_help)->excludes(config_opt);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_flag("--quiet,-q", quiet, "Suppress the summary");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::string suite_help = "Suite name:";
  for (const auto& n : oh::suite_names()) suite_help += " " + n;
  verify->add_option("--suite", suite, suite_help + " all")->required();
  verify->add_flag("--quiet,-q", quiet, "Print only failing criteria");

  auto* fit = app.add_subcommand("fit", "Fit an exponential decay rate to one CSV column");
  std::string csv, column;
  std::optional<double> window_start, window_end;
  fit->add_option("csv", csv, "Series CSV with a t column")->required();
  fit->add_option("--column", column, "Column to fit")->required();
  fit->add_option("--window-start", window_start, "Fit window start time");
  fit->add_option("--window-end", window_end, "Fit window end time");

  auto* report = app.add_subcommand("report", "Summarize a run directory");
  std::string report_dir;
  report->add_option("dir", report_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, preset, out_dir, quiet);
    if (*verify) return cmd_verify(suite, quiet);
    if (*fit) return cmd_fit(csv, column, window_start, window_end);
    return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
