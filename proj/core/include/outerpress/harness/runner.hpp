#pragma once

#include <optional>
#include <string>

#include "outerpress/fit.hpp"
#include "outerpress/harness/config.hpp"
#include "outerpress/oracles.hpp"
#include "outerpress/solver.hpp"

namespace outerpress::harness {

enum class RunStatus { completed, floor_breach, volume_collapse, config_error };

// "completed", "floor-breach", "volume-collapse", "config-error"
std::string to_string(RunStatus status);

// CLI exit code for a status: 0, 3, 4, 2.
int exit_code(RunStatus status);

struct FitSummary {
  std::optional<DecayFit> fit;  // empty when every sample sits below the fit floor
  std::string note;
};

struct RunSummary {
  RunStatus status = RunStatus::completed;
  std::string message;
  double final_time = 0.0;
  std::size_t steps = 0;
  // Extrema of the final state and over every step.
  double final_min_v = 0.0, final_max_v = 0.0, final_min_theta = 0.0, final_max_theta = 0.0;
  double observed_min_v = 0.0, observed_max_v = 0.0, observed_min_theta = 0.0, observed_max_theta = 0.0;
  double final_v_mean = 0.0, final_theta_mean = 0.0;
  std::optional<StationaryState> stationary;
  std::string stationary_note;
  // Final H1 distances; NaN without a stationary state.
  double h1_v = 0.0, h1_u = 0.0, h1_theta = 0.0;
  FitSummary decay_int_u2, decay_int_ux2, decay_int_thetax2, decay_h1_v, decay_h1_theta;
  JensenReport jensen;
  double peak_energy_residual = 0.0;
  double max_momentum_drift = 0.0;
  double initial_stress_mismatch = 0.0;
  double u0_integral = 0.0;
  double wall_clock_seconds = 0.0;
};

struct RunOutcome {
  RunSummary summary;
  RunResult result;  // partial when the solver stopped early
};

// Runs the configured scenario and fills every diagnostic that depends on the whole trajectory
// (stationary state, H1 distances, decay fits, Jensen check). Solver breakdowns are reported in
// the status, never thrown. Initial-data violations are rethrown as ConfigError.
RunOutcome execute(const RunConfig& config);

// Stationary state, H1 columns, and fits for an already computed result.
void summarize(const RunConfig& config, RunOutcome& outcome);

}  // namespace outerpress::harness
