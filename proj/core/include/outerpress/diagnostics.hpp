#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "outerpress/model.hpp"
#include "outerpress/schedule.hpp"

namespace outerpress {

// Every monitored functional at one instant. Quadrature follows the staggering: midpoint sums
// for cell quantities, trapezoid sums for node quantities.
struct DiagnosticsSample {
  double t = 0.0;
  double p = 0.0;
  double total_energy = 0.0;        // int (c_v theta + u^2/2 + p(t) v)
  double entropy_functional = 0.0;  // int (u^2/2 + v - ln v + theta - ln theta)
  double dissipation_V = 0.0;
  double theta_mean = 0.0;
  double v_mean = 0.0;
  double min_v = 0.0;
  double max_v = 0.0;
  double min_theta = 0.0;
  double max_theta = 0.0;
  double int_vx2 = 0.0;
  double int_ux2 = 0.0;
  double int_thetax2 = 0.0;
  double momentum = 0.0;
  double Y = 0.0;
  double F = 0.0;
  double energy_residual = 0.0;
  double h1_v = 0.0;
  double h1_u = 0.0;
  double h1_theta = 0.0;
  // Pieces that let the H1 distances be rebuilt once the stationary state is known.
  double int_u2 = 0.0;
  double var_v = 0.0;      // int (v - v_mean)^2
  double var_theta = 0.0;  // int (theta - theta_mean)^2
};

struct GradNorms {
  double int_vx2 = 0.0;
  double int_ux2 = 0.0;
  double int_thetax2 = 0.0;
};

struct H1Distance {
  double v = 0.0;
  double u = 0.0;
  double theta = 0.0;
};

struct JensenBounds {
  double C0 = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
};

struct JensenReport {
  bool passed = true;
  double worst_margin = 0.0;
  double worst_time = 0.0;
  double final_C0 = 0.0;
  std::size_t violations = 0;
};

// trapezoid sum of u
double momentum(const FluidState& state);

double total_energy(const FluidState& state, double p, const ThermoParams& params);

// u is averaged onto cells. Throws DomainError for non-positive v or theta.
double entropy_functional(const FluidState& state);

// int (kappa theta_x^2 / (v theta^2) + mu u_x^2 / (v theta)); theta_x vanishes on the end faces.
double dissipation_V(const FluidState& state, const ThermoParams& params);

// Face-difference quadrature. theta_x is zero on the end faces; v_x on the end faces is taken
// from the nearest interior face.
GradNorms grad_norms(const FluidState& state);

H1Distance h1_distance(const FluidState& state, double v_hat, double theta_hat);

// All fields except Y, F, energy_residual and the H1 distances, which need trajectory context.
DiagnosticsSample sample_diagnostics(const FluidState& state, const ThermoParams& params, double p);

// Rebuilds h1_* from the stored means, variances and gradient norms.
void fill_h1_distances(std::span<DiagnosticsSample> series, double v_hat, double theta_hat);

// E(t_k) - E(t_0) - int_{t_0}^{t_k} p'(tau) v_mean(tau) dtau with trapezoid time quadrature
// over the samples. Throws InputError unless times strictly increase.
std::vector<double> energy_balance_residual(std::span<const DiagnosticsSample> series,
                                            const PressureSchedule& schedule);

// Roots alpha1 <= 1 <= alpha2 of x - ln x = C0, bisected to adjacent doubles.
// Throws DomainError for C0 < 1.
JensenBounds jensen_bounds(double C0);

// With C0* the running maximum of the entropy functional, checks
// alpha1(C0*) <= theta_mean <= alpha2(C0*) at every sample; margin is the distance to the
// nearer root (negative on violation).
JensenReport jensen_check(std::span<const DiagnosticsSample> series);

// exp(int_0^t p)
double Y_of_t(const PressureSchedule& schedule, double t);

// Y^{-2} + (Y^{-1} int_0^t Y (P_bar - p) dtau)^2 + int_t^inf |p'|, evaluated in the
// overflow-free form int_0^t exp(-int_tau^t p) (P_bar - p(tau)) dtau.
double F_of_t(const PressureSchedule& schedule, double t, double P_bar);

}  // namespace outerpress
