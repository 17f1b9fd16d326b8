#include "outerpress/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "outerpress/diagnostics.hpp"
#include "outerpress/errors.hpp"

namespace outerpress {

namespace {

// Index of the snapshot recorded at time t, after checking that the history covers [0, t]
// without gaps wider than its nominal spacing.
std::size_t covering_snapshot(const StateHistory& history, double t) {
  const auto& snaps = history.snapshots;
  if (snaps.empty() || snaps.front().t != 0.0) throw CoverageError("history has no snapshot at t = 0");
  if (!(t >= 0.0)) throw CoverageError("negative time requested from a history");
  const double tol = 1e-9 * std::max(1.0, t);
  if (t > snaps.back().t + tol) {
    throw CoverageError("history ends at t = " + std::to_string(snaps.back().t) + ", requested t = " +
                        std::to_string(t));
  }
  const double max_gap = history.nominal_spacing > 0.0 ? history.nominal_spacing * (1.0 + 1e-9) + 1e-12
                                                       : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    if (k > 0 && snaps[k].t - snaps[k - 1].t > max_gap) {
      throw CoverageError("history gap of " + std::to_string(snaps[k].t - snaps[k - 1].t) + " before t = " +
                          std::to_string(snaps[k].t) + " exceeds the snapshot spacing");
    }
    if (std::abs(snaps[k].t - t) <= tol) return k;
    if (snaps[k].t > t) break;
  }
  throw CoverageError("no snapshot recorded at t = " + std::to_string(t));
}

// ln B at every cell center. The integral from 0 to x_j uses the momentum control volumes of
// nodes 0..j (half weight on node 0), which tile [0, x_j] exactly.
void log_B(const std::vector<double>& u0, const std::vector<double>& u, double dx, std::vector<double>& out) {
  const std::size_t n = u.size() - 1;
  double acc = 0.5 * (u0[0] - u[0]) * dx;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) acc += (u0[j] - u[j]) * dx;
    out[j] = acc;
  }
}

// int_0^1 exp(d s) ds
double exp_mean(double d) {
  if (std::abs(d) < 1e-4) return 1.0 + d * (0.5 + d * (1.0 / 6.0 + d / 24.0));
  return std::expm1(d) / d;
}

// int_0^1 s exp(d s) ds
double exp_first_moment(double d) {
  if (std::abs(d) < 1e-2) {
    return 0.5 + d * (1.0 / 3.0 + d * (1.0 / 8.0 + d * (1.0 / 30.0 + d * (1.0 / 144.0 + d * (1.0 / 840.0 + d / 5760.0)))));
  }
  return (d * std::exp(d) - std::expm1(d)) / (d * d);
}

}  // namespace

std::vector<double> representation_profile(double t, const StateHistory& history, const PressureSchedule& schedule,
                                           const ThermoParams& params) {
  params.validate();
  if (params.alpha != 0.0) {
    throw DomainError("alpha", "the representation of v needs constant viscosity (alpha = 0)");
  }
  const std::size_t last = covering_snapshot(history, t);
  const auto& snaps = history.snapshots;
  const FluidState& init = history.initial;
  const std::size_t n = init.n_cells();
  const double dx = 1.0 / static_cast<double>(n);
  const double inv_mu = 1.0 / params.mu_tilde;

  // log Y at each snapshot time.
  std::vector<double> log_y(last + 1, 0.0);
  for (std::size_t k = 1; k <= last; ++k) {
    if (schedule.has_analytic_integral()) {
      log_y[k] = schedule.integral(snaps[k].t);
    } else {
      const double a = snaps[k - 1].t;
      const double b = snaps[k].t;
      log_y[k] = log_y[k - 1] + (b - a) / 6.0 * (schedule.p(a) + 4.0 * schedule.p(0.5 * (a + b)) + schedule.p(b));
    }
  }

  std::vector<double> lb(n);
  log_B(init.u, snaps[last].u, dx, lb);
  std::vector<double> L_end(n);
  for (std::size_t j = 0; j < n; ++j) L_end[j] = inv_mu * (lb[j] + log_y[last]);

  // Product integration of exp(L(tau) - L(t)) theta(tau): L and theta linear between snapshots,
  // the exponential integrated exactly. Reduces to the trapezoid rule as L flattens.
  std::vector<double> integral(n, 0.0);
  std::vector<double> L_prev(n, 0.0);  // B(x, 0) = Y(0) = 1
  for (std::size_t k = 1; k <= last; ++k) {
    log_B(init.u, snaps[k].u, dx, lb);
    const double h = snaps[k].t - snaps[k - 1].t;
    for (std::size_t j = 0; j < n; ++j) {
      const double L_cur = inv_mu * (lb[j] + log_y[k]);
      const double delta = L_cur - L_prev[j];
      const double th_a = snaps[k - 1].theta[j];
      const double th_b = snaps[k].theta[j];
      integral[j] +=
          h * std::exp(L_prev[j] - L_end[j]) * (th_a * exp_mean(delta) + (th_b - th_a) * exp_first_moment(delta));
      L_prev[j] = L_cur;
    }
  }

  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = init.v[j] * std::exp(-L_end[j]) + params.R * inv_mu * integral[j];
  }
  return v;
}

double representation_v(double x, double t, const StateHistory& history, const PressureSchedule& schedule,
                        const ThermoParams& params) {
  const std::size_t n = history.initial.n_cells();
  if (n == 0) throw CoverageError("empty history");
  const double scaled = x * static_cast<double>(n) - 0.5;
  const double j = std::round(scaled);
  if (std::abs(scaled - j) > 1e-9 || j < 0.0 || j >= static_cast<double>(n)) {
    throw DomainError("x", "x = " + std::to_string(x) + " is not a cell center of the history grid");
  }
  return representation_profile(t, history, schedule, params)[static_cast<std::size_t>(j)];
}

StationaryState stationary_state(const FluidState& initial, const PressureSchedule& schedule, double correction,
                                 double horizon, double max_v_mean, const ThermoParams& params,
                                 double tail_tolerance) {
  params.validate();
  initial.validate();
  const auto limit = schedule.limit();
  if (!limit) throw ScheduleError("schedule has no limit pressure; the stationary state is undefined");
  if (!(*limit > 0.0)) throw ScheduleError("limit pressure must be positive");

  StationaryState s;
  s.P_bar = *limit;
  s.P_bar_estimated = schedule.limit_is_estimated();
  s.correction = correction;
  s.horizon = horizon;
  s.initial_energy = total_energy(initial, schedule(initial.t).p, params);
  const double denom = s.P_bar * (1.0 + params.c_v / params.R);
  s.v_hat = (s.initial_energy + correction) / denom;
  s.theta_hat = s.P_bar * s.v_hat / params.R;
  try {
    s.tail_bound = schedule.tail_variation(horizon) * max_v_mean;
  } catch (const ScheduleError&) {
    s.tail_bound = std::numeric_limits<double>::infinity();
  }
  s.v_uncertainty = s.tail_bound / denom;
  s.theta_uncertainty = s.P_bar * s.v_uncertainty / params.R;
  s.insufficient_horizon = !(s.tail_bound <= tail_tolerance);
  if (!(s.v_hat > 0.0)) throw DomainError("v_hat", "stationary specific volume is not positive");
  return s;
}

StationaryState stationary_state(const FluidState& initial, const PressureSchedule& schedule, const RunResult& run,
                                 const ThermoParams& params, double tail_tolerance) {
  return stationary_state(initial, schedule, run.work_integral, run.final_state.t, run.max_v_mean, params,
                          tail_tolerance);
}

FluidState equilibrium_state(double P_bar, double v_hat, const MassGrid& grid, const ThermoParams& params) {
  if (!(P_bar > 0.0)) throw DomainError("P_bar", "limit pressure must be positive");
  if (!(v_hat > 0.0)) throw DomainError("v_hat", "specific volume must be positive");
  params.validate();
  FluidState s;
  s.v.assign(grid.n_cells(), v_hat);
  s.theta.assign(grid.n_cells(), P_bar * v_hat / params.R);
  s.u.assign(grid.n_nodes(), 0.0);
  return s;
}

UniformFlowValue uniform_ode_oracle(double v0, double theta0, double c, double t) {
  if (!(v0 > 0.0)) throw DomainError("v0", "initial specific volume must be positive");
  if (!(theta0 > 0.0)) throw DomainError("theta0", "initial temperature must be positive");
  if (!(t >= 0.0)) throw DomainError("t", "negative time");
  UniformFlowValue r;
  r.v = v0 + c * t;
  if (!(r.v > 0.0)) throw DomainError("v", "uniform flow compresses to zero volume by t = " + std::to_string(t));
  r.theta = (v0 * theta0 + c * c * t) / r.v;
  if (!(r.theta > c)) {
    throw DomainError("p", "induced pressure (theta - c) / v is not positive at t = " + std::to_string(t));
  }
  r.p = (r.theta - c) / r.v;
  return r;
}

InitialData UniformFlowCase::initial_data() const {
  ProfileInit profile;
  const double v = v0;
  const double th = theta0;
  const double slope = c;
  profile.v0 = [v](double) { return v; };
  profile.u0 = [slope](double x) { return slope * (x - 0.5); };
  profile.theta0 = [th](double) { return th; };
  profile.label = "uniform-flow";
  return profile;
}

PressureSchedule UniformFlowCase::induced_schedule() const {
  (void)uniform_ode_oracle(v0, theta0, c, 0.0);
  // theta - c = v0 (theta0 - c) / v, hence p = v0 (theta0 - c) / v^2.
  const double a = v0 * (theta0 - c);
  const double v_init = v0;
  const double slope = c;
  PressureSchedule::Custom spec;
  spec.eval = [a, v_init, slope](double t) {
    const double v = v_init + slope * t;
    if (!(v > 0.0)) throw DomainError("t", "uniform flow undefined after volume collapse");
    return PressureValue{a / (v * v), -2.0 * slope * a / (v * v * v)};
  };
  if (c == 0.0) {
    spec.limit = a / (v0 * v0);
    spec.tail_variation = [](double) { return 0.0; };
  } else if (c > 0.0) {
    // Monotone decay to zero.
    spec.tail_variation = [a, v_init, slope](double t) {
      const double v = v_init + slope * t;
      return a / (v * v);
    };
  }
  spec.label = "uniform-flow-induced";
  return PressureSchedule::custom(std::move(spec));
}

}  // namespace outerpress
