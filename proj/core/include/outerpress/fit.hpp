#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace outerpress {

// Which samples enter a decay fit. Without an explicit start the window is the latter half of
// the samples whose value exceeds the floor.
struct WindowPolicy {
  std::optional<double> t_start;
  std::optional<double> t_end;
  double floor = 1e-14;
  std::size_t min_points = 8;
};

struct DecayFit {
  double lambda = 0.0;
  double r_squared = 1.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t points = 0;
};

// Least-squares slope of ln y against t over the window; lambda = -slope. A zero-variance
// series fits exactly (r^2 = 1). Throws FitError with fewer than min_points usable samples.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y, const WindowPolicy& policy = {});

}  // namespace outerpress
