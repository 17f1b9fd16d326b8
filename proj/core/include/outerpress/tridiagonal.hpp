#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace outerpress {

// Thomas algorithm for lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
// lower[0] and upper[n-1] are ignored. The solution overwrites rhs; scratch must hold n values.
// Stable without pivoting for the diagonally dominant systems the solver assembles.
inline void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                              std::span<const double> upper, std::span<double> rhs,
                              std::span<double> scratch) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n || scratch.size() < n) {
    throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");
  }
  if (n == 0) return;
  double denom = diag[0];
  scratch[0] = upper[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * scratch[i - 1];
    scratch[i] = upper[i] / denom;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= scratch[i] * rhs[i + 1];
  }
}

inline std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::vector<double> rhs) {
  std::vector<double> scratch(diag.size());
  solve_tridiagonal(lower, diag, upper, rhs, scratch);
  return rhs;
}

}  // namespace outerpress
