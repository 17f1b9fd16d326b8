#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "outerpress/diagnostics.hpp"
#include "outerpress/initial_data.hpp"
#include "outerpress/model.hpp"
#include "outerpress/schedule.hpp"

namespace outerpress {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double theta_floor = 1e-10;
  // When set, dt_n = cfl_factor * dx / max(|u| + sqrt(R theta)), capped by dt.
  std::optional<double> cfl_factor;
  bool mms_enabled = false;
  // Snapshot and diagnostics stride in steps.
  std::size_t store_history_every = 1;

  void validate() const;
};

// Manufactured source terms f(x, t) added to the momentum and internal-energy equations.
struct SourceTerms {
  std::function<double(double, double)> momentum;
  std::function<double(double, double)> energy;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> theta;
  double p = 0.0;
};

// Trajectory record consumed by the representation formula for v.
struct StateHistory {
  FluidState initial;
  std::vector<Snapshot> snapshots;  // first one at t = 0, times strictly increasing
  double nominal_spacing = 0.0;     // dt * stride

  void append(const FluidState& state, double p);
};

// Boundary data at time t: total stress -p(t) on both end faces, zero heat flux.
struct BoundaryCondition {
  double stress_left = 0.0;
  double stress_right = 0.0;
  double heat_flux_left = 0.0;
  double heat_flux_right = 0.0;
};

BoundaryCondition apply_boundary(const FluidState& state, double t, const PressureSchedule& schedule);

// Step size the config asks for at this state (fixed dt or the adaptive rule).
double time_step(const FluidState& state, const ThermoParams& params, const SolverConfig& config);

// Three-stage semi-implicit update with reusable scratch storage:
//  1. velocity: backward Euler viscous term with mu(theta^n)/v^n frozen on cells, explicit
//     pressure R theta^n / v^n, end nodes loaded with the boundary stress -p(t^n);
//  2. volume: v^{n+1} = v^n + dt (u_{j+1} - u_j)^{n+1} / dx;
//  3. temperature: backward Euler conduction with kappa(theta^n) / v^{n+1} on interior faces,
//     zero flux on the end faces, explicit compression -R theta^n u_x / v^{n+1} and dissipation
//     mu u_x^2 / v^{n+1} evaluated with the new velocity.
class Stepper {
 public:
  Stepper(ThermoParams params, PressureSchedule schedule, double theta_floor,
          std::optional<SourceTerms> forcing = std::nullopt);

  // Advances state in place by dt. Throws FloorBreachError / VolumeCollapseError with the
  // time of the failed step.
  void advance(FluidState& state, double dt);

  bool has_forcing() const noexcept { return forcing_.has_value(); }

 private:
  void resize(std::size_t n_cells);

  ThermoParams params_;
  PressureSchedule schedule_;
  double theta_floor_;
  std::optional<SourceTerms> forcing_;
  std::vector<double> lower_, diag_, upper_, rhs_, scratch_;
  std::vector<double> mu_, visc_, cell_pressure_, kappa_;
};

FluidState step(const FluidState& state, const PressureSchedule& schedule, const ThermoParams& params,
                const SolverConfig& config, const SourceTerms* forcing = nullptr);

struct RunResult {
  FluidState final_state;
  StateHistory history;
  std::vector<DiagnosticsSample> series;
  std::size_t steps = 0;
  double u0_integral = 0.0;
  // Step-level trapezoid of p'(t) * mean(v), the boundary work term of the energy balance.
  double work_integral = 0.0;
  double max_v_mean = 0.0;
  // Largest |sum w_i u_i(t) - sum w_i u_i(0)| over every step, not only sampled ones.
  double max_momentum_drift = 0.0;
  double max_abs_energy_residual = 0.0;
  // Extrema of v and theta over every step.
  double min_v = 0.0, max_v = 0.0, min_theta = 0.0, max_theta = 0.0;
  // |sigma(0, 0) + p(0)| at the left end of the initial state.
  double initial_stress_mismatch = 0.0;
};

// Drives Stepper to config.t_end, recording snapshots and diagnostics every
// store_history_every steps and at the final time. Usable incrementally so callers can keep
// the partial trajectory when a step throws.
class Simulation {
 public:
  Simulation(FluidState initial, PressureSchedule schedule, ThermoParams params, SolverConfig config,
             std::optional<SourceTerms> forcing = std::nullopt);

  bool finished() const noexcept;
  // One step plus bookkeeping; throws SolverError subclasses on breakdown.
  void advance();
  void run_to_end();

  const FluidState& state() const noexcept { return result_.final_state; }
  const RunResult& result() const noexcept { return result_; }
  RunResult take_result() && { return std::move(result_); }

 private:
  void record_sample();
  void track_extrema();
  double log_Y() const;
  bool forcing_enabled() const noexcept;

  PressureSchedule schedule_;
  ThermoParams params_;
  SolverConfig config_;
  Stepper stepper_;
  RunResult result_;
  double initial_energy_ = 0.0;
  double initial_momentum_ = 0.0;
  double log_Y_numeric_ = 0.0;   // step-accumulated integral of p, custom schedules only
  double envelope_middle_ = 0.0; // Y^{-1} int_0^t Y (P_bar - p) dtau, step-accumulated
  double previous_work_integrand_ = 0.0;
  bool envelope_available_ = false;
};

RunResult run(const FluidState& initial, const PressureSchedule& schedule, const ThermoParams& params,
              const SolverConfig& config, const SourceTerms* forcing = nullptr);

RunResult run(const MassGrid& grid, const InitialData& initial, const PressureSchedule& schedule,
              const ThermoParams& params, const SolverConfig& config, const SourceTerms* forcing = nullptr);

}  // namespace outerpress
