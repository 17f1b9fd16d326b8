#include "outerpress/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "outerpress/diagnostics.hpp"
#include "outerpress/errors.hpp"

namespace outerpress::harness {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::floor_breach: return "floor-breach";
    case RunStatus::volume_collapse: return "volume-collapse";
    case RunStatus::config_error: return "config-error";
  }
  return "unknown";
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return 0;
    case RunStatus::config_error: return 2;
    case RunStatus::floor_breach: return 3;
    case RunStatus::volume_collapse: return 4;
  }
  return 1;
}

namespace {

template <class Member>
FitSummary fit_column(const std::vector<DiagnosticsSample>& series, Member member) {
  std::vector<double> t;
  std::vector<double> y;
  t.reserve(series.size());
  y.reserve(series.size());
  for (const auto& s : series) {
    t.push_back(s.t);
    y.push_back(s.*member);
  }
  FitSummary out;
  try {
    out.fit = fit_decay_rate(t, y);
  } catch (const FitError& e) {
    out.note = e.what();
  }
  return out;
}

}  // namespace

void summarize(const RunConfig& config, RunOutcome& outcome) {
  RunSummary& s = outcome.summary;
  RunResult& r = outcome.result;
  auto& series = r.series;
  const FluidState& fin = r.final_state;
  s.final_time = fin.t;
  s.steps = r.steps;
  s.final_min_v = *std::min_element(fin.v.begin(), fin.v.end());
  s.final_max_v = *std::max_element(fin.v.begin(), fin.v.end());
  s.final_min_theta = *std::min_element(fin.theta.begin(), fin.theta.end());
  s.final_max_theta = *std::max_element(fin.theta.begin(), fin.theta.end());
  s.observed_min_v = r.min_v;
  s.observed_max_v = r.max_v;
  s.observed_min_theta = r.min_theta;
  s.observed_max_theta = r.max_theta;
  s.final_v_mean = series.back().v_mean;
  s.final_theta_mean = series.back().theta_mean;
  s.peak_energy_residual = r.max_abs_energy_residual;
  s.max_momentum_drift = r.max_momentum_drift;
  s.initial_stress_mismatch = r.initial_stress_mismatch;
  s.u0_integral = r.u0_integral;

  s.h1_v = s.h1_u = s.h1_theta = std::numeric_limits<double>::quiet_NaN();
  try {
    s.stationary = stationary_state(r.history.initial, config.schedule, r, config.params, config.stationary_tolerance);
    if (s.stationary->insufficient_horizon) s.stationary_note = "insufficient horizon: tail bound above tolerance";
    fill_h1_distances(series, s.stationary->v_hat, s.stationary->theta_hat);
    s.h1_v = series.back().h1_v;
    s.h1_u = series.back().h1_u;
    s.h1_theta = series.back().h1_theta;
  } catch (const Error& e) {
    s.stationary_note = e.what();
  }

  s.decay_int_u2 = fit_column(series, &DiagnosticsSample::int_u2);
  s.decay_int_ux2 = fit_column(series, &DiagnosticsSample::int_ux2);
  s.decay_int_thetax2 = fit_column(series, &DiagnosticsSample::int_thetax2);
  if (s.stationary) {
    s.decay_h1_v = fit_column(series, &DiagnosticsSample::h1_v);
    s.decay_h1_theta = fit_column(series, &DiagnosticsSample::h1_theta);
  }
  s.jensen = jensen_check(series);
}

RunOutcome execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  FluidState initial;
  try {
    initial = init_state(MassGrid(config.n_cells), config.initial).state;
  } catch (const InitError& e) {
    throw ConfigError(0, "initial", e.what());
  }

  Simulation sim(std::move(initial), config.schedule, config.params, config.solver);
  RunStatus status = RunStatus::completed;
  std::string message;
  try {
    sim.run_to_end();
  } catch (const FloorBreachError& e) {
    status = RunStatus::floor_breach;
    message = e.what();
  } catch (const VolumeCollapseError& e) {
    status = RunStatus::volume_collapse;
    message = e.what();
  }

  RunOutcome outcome;
  outcome.result = std::move(sim).take_result();
  outcome.summary.status = status;
  outcome.summary.message = message;
  summarize(config, outcome);
  outcome.summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

}  // namespace outerpress::harness
