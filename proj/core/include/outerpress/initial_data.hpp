#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "outerpress/model.hpp"

namespace outerpress {

struct ConstantInit {
  double v0 = 1.0;
  double u0 = 0.0;
  double theta0 = 1.0;
};

// base + amplitude * sin(2 pi k x + phase) for each field. seed == 0 means phase 0; any other seed
// draws the phase deterministically from a 64-bit Mersenne twister.
struct SineInit {
  double v_base = 1.0;
  double u_base = 0.0;
  double theta_base = 1.0;
  double v_amplitude = 0.1;
  double u_amplitude = 0.0;
  double theta_amplitude = 0.0;
  int wavenumber = 1;
  std::uint64_t seed = 0;

  double phase() const;
};

// Analytic profiles (used by the oracles).
struct ProfileInit {
  std::function<double(double)> v0;
  std::function<double(double)> u0;
  std::function<double(double)> theta0;
  std::string label;
};

// Samples (x, v0, u0, theta0) read from a CSV file, linearly interpolated onto the grid.
struct TableInit {
  std::vector<double> x;
  std::vector<double> v0;
  std::vector<double> u0;
  std::vector<double> theta0;
  std::string source;
};

using InitialData = std::variant<ConstantInit, SineInit, ProfileInit, TableInit>;

// Reads a CSV with header "x,v0,u0,theta0" and rows covering [0, 1] in increasing x.
// Throws InputError for malformed files and InitError for non-positive v0 / theta0 rows.
TableInit load_initial_table(const std::filesystem::path& path);

struct InitResult {
  FluidState state;
  double u0_integral = 0.0;  // trapezoid integral of u0; recorded, not forced to zero
};

// Samples v0, theta0 at cell centers and u0 at nodes. Throws InitError at the first
// non-positive v0 or theta0 sample.
InitResult init_state(const MassGrid& grid, const InitialData& initial);

}  // namespace outerpress
