#include "outerpress/model.hpp"

#include <cmath>
#include <string>

#include "outerpress/errors.hpp"

namespace outerpress {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(field, std::string(field) + " must be positive and finite, got " +
                                 std::to_string(value));
  }
}

void require_nonnegative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(field, std::string(field) + " must be non-negative and finite, got " +
                                 std::to_string(value));
  }
}

}  // namespace

void ThermoParams::validate() const {
  require_positive(R, "R");
  require_positive(c_v, "c_v");
  require_positive(mu_tilde, "mu_tilde");
  require_positive(kappa_tilde, "kappa_tilde");
  require_nonnegative(alpha, "alpha");
  require_nonnegative(beta, "beta");
}

MassGrid::MassGrid(std::size_t n_cells) : n_cells_(n_cells), dx_(0.0) {
  if (n_cells == 0) {
    throw DomainError("n_cells", "grid needs at least one cell");
  }
  dx_ = 1.0 / static_cast<double>(n_cells);
}

std::vector<double> MassGrid::cell_centers() const {
  std::vector<double> x(n_cells_);
  for (std::size_t j = 0; j < n_cells_; ++j) x[j] = cell_center(j);
  return x;
}

std::vector<double> MassGrid::nodes() const {
  std::vector<double> x(n_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
  return x;
}

void FluidState::validate() const {
  if (v.empty()) throw DomainError("v", "state has no cells");
  if (theta.size() != v.size()) {
    throw DomainError("theta", "theta length " + std::to_string(theta.size()) +
                                   " does not match cell count " + std::to_string(v.size()));
  }
  if (u.size() != v.size() + 1) {
    throw DomainError("u", "u length " + std::to_string(u.size()) +
                               " does not match node count " + std::to_string(v.size() + 1));
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(v[j] > 0.0)) {
      throw DomainError("v", "non-positive specific volume at cell " + std::to_string(j));
    }
    if (!(theta[j] > 0.0)) {
      throw DomainError("theta", "non-positive temperature at cell " + std::to_string(j));
    }
  }
}

double pressure(double v, double theta, const ThermoParams& params) {
  require_positive(v, "v");
  require_positive(theta, "theta");
  return params.R * theta / v;
}

double conductivity(double theta, const ThermoParams& params) {
  require_positive(theta, "theta");
  return params.beta == 0.0 ? params.kappa_tilde
                            : params.kappa_tilde * std::pow(theta, params.beta);
}

double viscosity(double theta, const ThermoParams& params) {
  require_positive(theta, "theta");
  return params.alpha == 0.0 ? params.mu_tilde : params.mu_tilde * std::pow(theta, params.alpha);
}

double stress(double du_dx, double v, double theta, const ThermoParams& params) {
  return viscosity(theta, params) * du_dx / v - pressure(v, theta, params);
}

}  // namespace outerpress
