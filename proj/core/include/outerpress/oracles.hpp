#pragma once

#include <optional>
#include <vector>

#include "outerpress/initial_data.hpp"
#include "outerpress/model.hpp"
#include "outerpress/schedule.hpp"
#include "outerpress/solver.hpp"

namespace outerpress {

// ---------------------------------------------------------------------------------------------
// Representation of v along particle paths
// ---------------------------------------------------------------------------------------------

// Rebuilds v(x, t) from the velocity/temperature history alone:
//   v = v0 / (B Y)^{1/mu} * (1 + R / (mu v0) * int_0^t (B Y)^{1/mu} theta dtau),
//   B(x, t) = exp(int_0^x (u0 - u(y, t)) dy),  Y(t) = exp(int_0^t p),
// which with mu = R = 1 is the classical formula. Valid for alpha = 0 only (DomainError otherwise).
// x must coincide with a cell center. Throws CoverageError if t lies outside the recorded
// history or the history has a gap wider than its nominal spacing before t.
double representation_v(double x, double t, const StateHistory& history, const PressureSchedule& schedule,
                        const ThermoParams& params = {});

// Same formula for every cell at once.
std::vector<double> representation_profile(double t, const StateHistory& history, const PressureSchedule& schedule,
                                           const ThermoParams& params = {});

// ---------------------------------------------------------------------------------------------
// Stationary state
// ---------------------------------------------------------------------------------------------

struct StationaryState {
  double v_hat = 0.0;
  double theta_hat = 0.0;
  double P_bar = 0.0;
  double initial_energy = 0.0;  // int (u0^2/2 + c_v theta0 + p(0) v0)
  double correction = 0.0;      // int_0^T p'(tau) mean(v)(tau) dtau
  double tail_bound = 0.0;      // tail_Ip(T) * max mean(v): bound on the neglected int_T^inf
  double horizon = 0.0;
  // Uncertainties on v_hat and theta_hat implied by tail_bound.
  double v_uncertainty = 0.0;
  double theta_uncertainty = 0.0;
  bool P_bar_estimated = false;
  bool insufficient_horizon = false;
};

// Energy balance at t -> infinity: c_v theta_hat + P_bar v_hat = E0 + correction, with
// theta_hat = P_bar v_hat / R. Throws ScheduleError when the schedule has no limit value.
StationaryState stationary_state(const FluidState& initial, const PressureSchedule& schedule, double correction,
                                 double horizon, double max_v_mean, const ThermoParams& params = {},
                                 double tail_tolerance = 1e-8);

StationaryState stationary_state(const FluidState& initial, const PressureSchedule& schedule, const RunResult& run,
                                 const ThermoParams& params = {}, double tail_tolerance = 1e-8);

// Uniform rest state (v_hat, 0, P_bar v_hat / R).
FluidState equilibrium_state(double P_bar, double v_hat, const MassGrid& grid, const ThermoParams& params = {});

// ---------------------------------------------------------------------------------------------
// Spatially uniform flow u = c (x - 1/2) with mu = R = c_v = 1
// ---------------------------------------------------------------------------------------------

struct UniformFlowValue {
  double v = 0.0;
  double theta = 0.0;
  double p = 0.0;  // induced boundary pressure (theta - c) / v
};

// v = v0 + c t, theta = (v0 theta0 + c^2 t) / (v0 + c t). Throws DomainError if v <= 0 or the
// induced pressure is not positive (theta <= c).
UniformFlowValue uniform_ode_oracle(double v0, double theta0, double c, double t);

struct UniformFlowCase {
  double v0 = 1.0;
  double theta0 = 2.0;
  double c = 0.5;

  InitialData initial_data() const;
  // Custom schedule p(t) = (theta(t) - c) / v(t).
  PressureSchedule induced_schedule() const;
};

// ---------------------------------------------------------------------------------------------
// Manufactured solutions
// ---------------------------------------------------------------------------------------------

// v* = a0 + a1 cos(2 pi x) e^{-t}, u* = b1 sin(2 pi x) e^{-t}, theta* = d0 + d1 cos(2 pi x) e^{-t},
// with a1 = -2 pi b1 so that v*_t = u*_x holds identically.
struct MmsCase {
  double a0 = 1.0;
  double b1 = 0.05;
  double d0 = 1.0;
  double d1 = 0.2;
  ThermoParams params{};

  double a1() const;
  // Throws DomainError when v* or theta* can become non-positive.
  void validate() const;
};

struct MmsPoint {
  double v = 0.0;
  double u = 0.0;
  double theta = 0.0;
  double mass_forcing = 0.0;      // v*_t - u*_x (zero by construction)
  double momentum_forcing = 0.0;  // u*_t - sigma*_x
  double energy_forcing = 0.0;    // c_v theta*_t + R theta* u*_x / v* - (kappa theta*_x / v*)_x - mu u*_x^2 / v*
};

MmsPoint mms_reference(const MmsCase& mms, double x, double t);

// Boundary pressure -sigma*(0, t); equal to -sigma*(1, t) for this family.
PressureSchedule mms_schedule(const MmsCase& mms);
InitialData mms_initial_data(const MmsCase& mms);
SourceTerms mms_forcing(const MmsCase& mms);

struct MmsErrors {
  double v = 0.0;
  double u = 0.0;
  double theta = 0.0;
};

// Discrete L2 errors (midpoint for cells, trapezoid for nodes) against the targets at state.t.
MmsErrors mms_errors(const MmsCase& mms, const FluidState& state);

}  // namespace outerpress
