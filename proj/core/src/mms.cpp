#include <cmath>
#include <numbers>
#include <string>

#include "outerpress/errors.hpp"
#include "outerpress/oracles.hpp"

namespace outerpress {

namespace {

constexpr double kWave = 2.0 * std::numbers::pi;

double power_or_one(double base, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(base, exponent); }

// d/dtheta of coefficient * theta^exponent
double power_slope(double base, double exponent) {
  return exponent == 0.0 ? 0.0 : exponent * std::pow(base, exponent - 1.0);
}

}  // namespace

double MmsCase::a1() const { return -kWave * b1; }

void MmsCase::validate() const {
  params.validate();
  if (!(a0 - std::abs(a1()) > 0.0)) {
    throw DomainError("a0", "manufactured v can reach zero: a0 = " + std::to_string(a0) +
                                ", |a1| = " + std::to_string(std::abs(a1())));
  }
  if (!(d0 - std::abs(d1) > 0.0)) {
    throw DomainError("d0", "manufactured theta can reach zero: d0 = " + std::to_string(d0) +
                                ", |d1| = " + std::to_string(std::abs(d1)));
  }
}

MmsPoint mms_reference(const MmsCase& mms, double x, double t) {
  const ThermoParams& pr = mms.params;
  const double E = std::exp(-t);
  const double C = std::cos(kWave * x);
  const double S = std::sin(kWave * x);
  const double a1 = mms.a1();

  const double v = mms.a0 + a1 * C * E;
  const double v_t = -a1 * C * E;
  const double v_x = -a1 * kWave * S * E;

  const double u = mms.b1 * S * E;
  const double u_t = -u;
  const double u_x = mms.b1 * kWave * C * E;
  const double u_xx = -mms.b1 * kWave * kWave * S * E;

  const double th = mms.d0 + mms.d1 * C * E;
  const double th_t = -mms.d1 * C * E;
  const double th_x = -mms.d1 * kWave * S * E;
  const double th_xx = -mms.d1 * kWave * kWave * C * E;

  const double mu = pr.mu_tilde * power_or_one(th, pr.alpha);
  const double mu_x = pr.mu_tilde * power_slope(th, pr.alpha) * th_x;
  const double kappa = pr.kappa_tilde * power_or_one(th, pr.beta);
  const double kappa_x = pr.kappa_tilde * power_slope(th, pr.beta) * th_x;

  // sigma = mu u_x / v - R theta / v
  const double sigma_x = (mu_x * u_x + mu * u_xx) / v - mu * u_x * v_x / (v * v) - pr.R * th_x / v +
                         pr.R * th * v_x / (v * v);
  // q = kappa theta_x / v
  const double q_x = (kappa_x * th_x + kappa * th_xx) / v - kappa * th_x * v_x / (v * v);

  MmsPoint r;
  r.v = v;
  r.u = u;
  r.theta = th;
  r.mass_forcing = v_t - u_x;
  r.momentum_forcing = u_t - sigma_x;
  r.energy_forcing = pr.c_v * th_t + pr.R * th * u_x / v - q_x - mu * u_x * u_x / v;
  return r;
}

PressureSchedule mms_schedule(const MmsCase& mms) {
  mms.validate();
  const MmsCase c = mms;
  PressureSchedule::Custom custom;
  // At x = 0: p = (R theta - mu b1 k E) / v with theta = d0 + d1 E, v = a0 + a1 E.
  custom.eval = [c](double t) {
    const ThermoParams& pr = c.params;
    const double E = std::exp(-t);
    const double th = c.d0 + c.d1 * E;
    const double th_t = -c.d1 * E;
    const double v = c.a0 + c.a1() * E;
    const double v_t = -c.a1() * E;
    const double mu = pr.mu_tilde * power_or_one(th, pr.alpha);
    const double mu_t = pr.mu_tilde * power_slope(th, pr.alpha) * th_t;
    const double visc = mu * c.b1 * kWave * E;
    const double visc_t = c.b1 * kWave * (mu_t * E - mu * E);
    const double num = pr.R * th - visc;
    const double num_t = pr.R * th_t - visc_t;
    return PressureValue{num / v, (num_t * v - num * v_t) / (v * v)};
  };
  custom.limit = mms.params.R * mms.d0 / mms.a0;
  custom.label = "manufactured";
  if (!(custom.eval(0.0).p > 0.0)) throw DomainError("b1", "manufactured boundary pressure is not positive at t = 0");
  return PressureSchedule::custom(std::move(custom));
}

InitialData mms_initial_data(const MmsCase& mms) {
  mms.validate();
  const MmsCase c = mms;
  ProfileInit profile;
  profile.v0 = [c](double x) { return mms_reference(c, x, 0.0).v; };
  profile.u0 = [c](double x) { return mms_reference(c, x, 0.0).u; };
  profile.theta0 = [c](double x) { return mms_reference(c, x, 0.0).theta; };
  profile.label = "manufactured";
  return profile;
}

SourceTerms mms_forcing(const MmsCase& mms) {
  mms.validate();
  const MmsCase c = mms;
  return SourceTerms{[c](double x, double t) { return mms_reference(c, x, t).momentum_forcing; },
                     [c](double x, double t) { return mms_reference(c, x, t).energy_forcing; }};
}

MmsErrors mms_errors(const MmsCase& mms, const FluidState& state) {
  const MassGrid grid = state.grid();
  const double dx = grid.dx();
  MmsErrors e;
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const MmsPoint ref = mms_reference(mms, grid.cell_center(j), state.t);
    e.v += (state.v[j] - ref.v) * (state.v[j] - ref.v);
    e.theta += (state.theta[j] - ref.theta) * (state.theta[j] - ref.theta);
  }
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
    const double w = (i == 0 || i + 1 == grid.n_nodes()) ? 0.5 : 1.0;
    const double du = state.u[i] - mms_reference(mms, grid.node(i), state.t).u;
    e.u += w * du * du;
  }
  e.v = std::sqrt(e.v * dx);
  e.u = std::sqrt(e.u * dx);
  e.theta = std::sqrt(e.theta * dx);
  return e;
}

}  // namespace outerpress
