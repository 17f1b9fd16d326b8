#pragma once

#include <cstddef>
#include <vector>

namespace outerpress {

// Constitutive constants of the polytropic gas with mu = mu_tilde * theta^alpha and
// kappa = kappa_tilde * theta^beta. Defaults are the normalized values R = c_v = mu = kappa = 1.
struct ThermoParams {
  double R = 1.0;
  double c_v = 1.0;
  double mu_tilde = 1.0;
  double kappa_tilde = 1.0;
  double alpha = 0.0;
  double beta = 1.0;

  // Throws DomainError naming the first offending constant.
  void validate() const;

  // alpha == 0 and beta > 0: the regime where time-independent bounds and
  // convergence to the stationary state are known to hold.
  bool theorem_regime() const noexcept { return alpha == 0.0 && beta > 0.0; }
};

// Uniform partition of the mass coordinate x in (0, 1). Cell-centered quantities (v, theta)
// live at (j + 1/2) / N, node quantities (u) at i / N.
class MassGrid {
 public:
  explicit MassGrid(std::size_t n_cells);

  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t n_nodes() const noexcept { return n_cells_ + 1; }
  double dx() const noexcept { return dx_; }

  double cell_center(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5) * dx_;
  }
  double node(std::size_t i) const noexcept {
    return i == n_cells_ ? 1.0 : static_cast<double>(i) * dx_;
  }

  std::vector<double> cell_centers() const;
  std::vector<double> nodes() const;

  friend bool operator==(const MassGrid&, const MassGrid&) = default;

 private:
  std::size_t n_cells_;
  double dx_;
};

// Discrete fields on the staggered grid at time t.
struct FluidState {
  std::vector<double> v;      // per cell
  std::vector<double> theta;  // per cell
  std::vector<double> u;      // per node
  double t = 0.0;

  std::size_t n_cells() const noexcept { return v.size(); }
  MassGrid grid() const { return MassGrid(v.size()); }

  // Length consistency and strict positivity of v and theta; throws DomainError.
  void validate() const;
};

// P = R theta / v
double pressure(double v, double theta, const ThermoParams& params);

// kappa = kappa_tilde theta^beta
double conductivity(double theta, const ThermoParams& params);

// mu = mu_tilde theta^alpha
double viscosity(double theta, const ThermoParams& params);

// Total stress (mu / v) u_x - P, the quantity set to -p(t) at both ends.
double stress(double du_dx, double v, double theta, const ThermoParams& params);

}  // namespace outerpress
