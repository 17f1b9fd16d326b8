#include "outerpress/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "outerpress/errors.hpp"

namespace outerpress {

namespace {

void require_positive_fields(const FluidState& state) {
  for (std::size_t j = 0; j < state.n_cells(); ++j) {
    if (!(state.v[j] > 0.0)) throw DomainError("v", "non-positive v at cell " + std::to_string(j));
    if (!(state.theta[j] > 0.0)) throw DomainError("theta", "non-positive theta at cell " + std::to_string(j));
  }
}

double cell_mean(const std::vector<double>& f) {
  double sum = 0.0;
  for (double x : f) sum += x;
  return sum / static_cast<double>(f.size());
}

double cell_variance(const std::vector<double>& f, double mean) {
  double sum = 0.0;
  for (double x : f) sum += (x - mean) * (x - mean);
  return sum / static_cast<double>(f.size());
}

double trapezoid_square(const std::vector<double>& u, double dx) {
  double sum = 0.0;
  const std::size_t n = u.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * u[i] * u[i];
  }
  return sum * dx;
}

}  // namespace

double momentum(const FluidState& state) {
  const std::size_t n = state.n_cells();
  const double dx = 1.0 / static_cast<double>(n);
  double sum = 0.5 * (state.u.front() + state.u.back());
  for (std::size_t i = 1; i < n; ++i) sum += state.u[i];
  return sum * dx;
}

double total_energy(const FluidState& state, double p, const ThermoParams& params) {
  const double dx = 1.0 / static_cast<double>(state.n_cells());
  double cells = 0.0;
  for (std::size_t j = 0; j < state.n_cells(); ++j) cells += params.c_v * state.theta[j] + p * state.v[j];
  return cells * dx + 0.5 * trapezoid_square(state.u, dx);
}

double entropy_functional(const FluidState& state) {
  require_positive_fields(state);
  const std::size_t n = state.n_cells();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u_cell = 0.5 * (state.u[j] + state.u[j + 1]);
    const double v = state.v[j];
    const double th = state.theta[j];
    sum += 0.5 * u_cell * u_cell + (v - std::log(v)) + (th - std::log(th));
  }
  return sum / static_cast<double>(n);
}

double dissipation_V(const FluidState& state, const ThermoParams& params) {
  require_positive_fields(state);
  const std::size_t n = state.n_cells();
  const double dx = 1.0 / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ux = (state.u[j + 1] - state.u[j]) / dx;
    sum += viscosity(state.theta[j], params) * ux * ux / (state.v[j] * state.theta[j]);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double th = 0.5 * (state.theta[j] + state.theta[j + 1]);
    const double v = 0.5 * (state.v[j] + state.v[j + 1]);
    const double thx = (state.theta[j + 1] - state.theta[j]) / dx;
    sum += conductivity(th, params) * thx * thx / (v * th * th);
  }
  return sum * dx;
}

GradNorms grad_norms(const FluidState& state) {
  const std::size_t n = state.n_cells();
  const double dx = 1.0 / static_cast<double>(n);
  GradNorms norms;
  for (std::size_t j = 0; j < n; ++j) {
    const double ux = (state.u[j + 1] - state.u[j]) / dx;
    norms.int_ux2 += ux * ux;
  }
  norms.int_ux2 *= dx;
  if (n < 2) return norms;
  double vx2 = 0.0;
  double thx2 = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double vx = (state.v[j + 1] - state.v[j]) / dx;
    const double thx = (state.theta[j + 1] - state.theta[j]) / dx;
    vx2 += vx * vx;
    thx2 += thx * thx;
  }
  // Trapezoid over the face values; v_x at the ends is copied from the first interior face.
  const double vx_first = (state.v[1] - state.v[0]) / dx;
  const double vx_last = (state.v[n - 1] - state.v[n - 2]) / dx;
  norms.int_vx2 = dx * (vx2 + 0.5 * (vx_first * vx_first + vx_last * vx_last));
  norms.int_thetax2 = dx * thx2;
  return norms;
}

H1Distance h1_distance(const FluidState& state, double v_hat, double theta_hat) {
  const std::size_t n = state.n_cells();
  const double dx = 1.0 / static_cast<double>(n);
  double v_l2 = 0.0;
  double th_l2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    v_l2 += (state.v[j] - v_hat) * (state.v[j] - v_hat);
    th_l2 += (state.theta[j] - theta_hat) * (state.theta[j] - theta_hat);
  }
  const GradNorms g = grad_norms(state);
  return {std::sqrt(v_l2 * dx + g.int_vx2), std::sqrt(trapezoid_square(state.u, dx) + g.int_ux2),
          std::sqrt(th_l2 * dx + g.int_thetax2)};
}

DiagnosticsSample sample_diagnostics(const FluidState& state, const ThermoParams& params, double p) {
  DiagnosticsSample s;
  const double dx = 1.0 / static_cast<double>(state.n_cells());
  s.t = state.t;
  s.p = p;
  s.total_energy = total_energy(state, p, params);
  s.entropy_functional = entropy_functional(state);
  s.dissipation_V = dissipation_V(state, params);
  s.theta_mean = cell_mean(state.theta);
  s.v_mean = cell_mean(state.v);
  const auto [min_v, max_v] = std::minmax_element(state.v.begin(), state.v.end());
  const auto [min_th, max_th] = std::minmax_element(state.theta.begin(), state.theta.end());
  s.min_v = *min_v;
  s.max_v = *max_v;
  s.min_theta = *min_th;
  s.max_theta = *max_th;
  const GradNorms g = grad_norms(state);
  s.int_vx2 = g.int_vx2;
  s.int_ux2 = g.int_ux2;
  s.int_thetax2 = g.int_thetax2;
  s.momentum = momentum(state);
  s.int_u2 = trapezoid_square(state.u, dx);
  s.var_v = cell_variance(state.v, s.v_mean);
  s.var_theta = cell_variance(state.theta, s.theta_mean);
  s.Y = std::numeric_limits<double>::quiet_NaN();
  s.F = std::numeric_limits<double>::quiet_NaN();
  s.energy_residual = std::numeric_limits<double>::quiet_NaN();
  s.h1_v = s.h1_u = s.h1_theta = std::numeric_limits<double>::quiet_NaN();
  return s;
}

void fill_h1_distances(std::span<DiagnosticsSample> series, double v_hat, double theta_hat) {
  for (auto& s : series) {
    const double dv = s.v_mean - v_hat;
    const double dth = s.theta_mean - theta_hat;
    s.h1_v = std::sqrt(s.var_v + dv * dv + s.int_vx2);
    s.h1_u = std::sqrt(s.int_u2 + s.int_ux2);
    s.h1_theta = std::sqrt(s.var_theta + dth * dth + s.int_thetax2);
  }
}

std::vector<double> energy_balance_residual(std::span<const DiagnosticsSample> series,
                                            const PressureSchedule& schedule) {
  std::vector<double> residual;
  if (series.empty()) return residual;
  residual.reserve(series.size());
  residual.push_back(0.0);
  double work = 0.0;
  double previous = schedule(series[0].t).dp * series[0].v_mean;
  for (std::size_t k = 1; k < series.size(); ++k) {
    if (!(series[k].t > series[k - 1].t)) {
      throw InputError("energy balance needs strictly increasing times (sample " + std::to_string(k) + ")");
    }
    const double current = schedule(series[k].t).dp * series[k].v_mean;
    work += 0.5 * (series[k].t - series[k - 1].t) * (previous + current);
    previous = current;
    residual.push_back(series[k].total_energy - series[0].total_energy - work);
  }
  return residual;
}

JensenBounds jensen_bounds(double C0) {
  if (!(C0 >= 1.0) || !std::isfinite(C0)) {
    throw DomainError("C0", "x - ln x = C0 has no real root for C0 = " + std::to_string(C0));
  }
  JensenBounds b{C0, 1.0, 1.0};
  if (C0 == 1.0) return b;
  auto f = [C0](double x) { return x - std::log(x) - C0; };

  // f > 0 at lo, f <= 0 at hi; bisect until the bracket is two adjacent doubles.
  auto bisect = [&f](double lo, double hi) {
    for (int iter = 0; iter < 4000; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if ((f(mid) > 0.0) == (f(lo) > 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  };

  double lo = 0.5;
  while (f(lo) <= 0.0) lo *= 0.5;
  b.alpha1 = bisect(lo, 1.0);

  double hi = 2.0;
  while (f(hi) <= 0.0) hi *= 2.0;
  b.alpha2 = bisect(hi, 1.0);
  return b;
}

JensenReport jensen_check(std::span<const DiagnosticsSample> series) {
  JensenReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  double running_max = 0.0;
  double cached_C0 = -1.0;
  JensenBounds bounds;
  for (const auto& s : series) {
    running_max = std::max(running_max, s.entropy_functional);
    if (running_max != cached_C0) {
      bounds = jensen_bounds(running_max);
      cached_C0 = running_max;
    }
    const double margin = std::min(s.theta_mean - bounds.alpha1, bounds.alpha2 - s.theta_mean);
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_time = s.t;
    }
    if (margin < 0.0) ++report.violations;
  }
  report.final_C0 = running_max;
  report.passed = report.violations == 0;
  return report;
}

double Y_of_t(const PressureSchedule& schedule, double t) { return std::exp(schedule.integral(t)); }

double F_of_t(const PressureSchedule& schedule, double t, double P_bar) {
  if (!(t >= 0.0)) throw DomainError("t", "F evaluated at negative time");
  if (t == 0.0) return 1.0 + schedule.tail_variation(0.0);
  std::size_t panels = std::max<std::size_t>(256, 2 * static_cast<std::size_t>(std::ceil(t / 1e-3)));
  if (panels % 2 == 1) ++panels;
  const double h = t / static_cast<double>(panels);
  const bool analytic = schedule.has_analytic_integral();
  // Integral of p at the panel nodes: exact for analytic kinds, Simpson per panel otherwise.
  std::vector<double> tau(panels + 1), p(panels + 1), cumulative(panels + 1, 0.0);
  for (std::size_t k = 0; k <= panels; ++k) {
    tau[k] = k == panels ? t : static_cast<double>(k) * h;
    p[k] = schedule.p(tau[k]);
    if (k == 0) continue;
    cumulative[k] = analytic ? schedule.integral(tau[k])
                             : cumulative[k - 1] + (tau[k] - tau[k - 1]) / 6.0 *
                                                       (p[k - 1] + 4.0 * schedule.p(0.5 * (tau[k] + tau[k - 1])) + p[k]);
  }
  const double total = cumulative.back();
  double sum = 0.0;
  for (std::size_t k = 0; k <= panels; ++k) {
    const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * std::exp(cumulative[k] - total) * (P_bar - p[k]);
  }
  const double middle = sum * h / 3.0;
  return std::exp(-2.0 * total) + middle * middle + schedule.tail_variation(t);
}

}  // namespace outerpress
