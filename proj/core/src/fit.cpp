#include "outerpress/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "outerpress/errors.hpp"

namespace outerpress {

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y, const WindowPolicy& policy) {
  if (t.size() != y.size()) throw FitError("time and value series differ in length");
  std::vector<std::size_t> usable;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(y[k] > policy.floor) || !std::isfinite(y[k])) continue;
    if (policy.t_start && t[k] < *policy.t_start) continue;
    if (policy.t_end && t[k] > *policy.t_end) continue;
    usable.push_back(k);
  }
  if (!policy.t_start) {
    const std::size_t half = usable.size() / 2;
    const std::size_t keep = std::max(usable.size() - half, std::min(usable.size(), policy.min_points));
    usable.erase(usable.begin(), usable.end() - static_cast<std::ptrdiff_t>(keep));
  }
  if (usable.size() < policy.min_points || usable.size() < 2) {
    throw FitError("decay fit needs at least " + std::to_string(policy.min_points) +
                   " samples above the floor in the window, found " + std::to_string(usable.size()));
  }

  const double count = static_cast<double>(usable.size());
  double mean_t = 0.0;
  double mean_log = 0.0;
  for (std::size_t k : usable) {
    mean_t += t[k];
    mean_log += std::log(y[k]);
  }
  mean_t /= count;
  mean_log /= count;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t k : usable) {
    const double dt = t[k] - mean_t;
    const double dy = std::log(y[k]) - mean_log;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0.0) throw FitError("decay fit window has no spread in time");

  DecayFit fit;
  const double slope = sty / stt;
  fit.lambda = -slope;
  // Roundoff in ln y alone counts as a zero-variance series.
  const double noise = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mean_log));
  if (syy <= count * noise * noise) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t k : usable) {
      const double r = std::log(y[k]) - (mean_log + slope * (t[k] - mean_t));
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  fit.t_start = t[usable.front()];
  fit.t_end = t[usable.back()];
  fit.points = usable.size();
  return fit;
}

}  // namespace outerpress
