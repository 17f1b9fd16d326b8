#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace outerpress {

inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

// p(t) together with p'(t).
struct PressureValue {
  double p = 0.0;
  double dp = 0.0;
};

enum class ScheduleKind { constant, exponential, smoothstep, tabulated, custom };

std::string to_string(ScheduleKind kind);

// Outer pressure p(t) > 0, continuously differentiable on its domain. Immutable once built.
class PressureSchedule {
 public:
  struct Constant {
    double p_bar;
  };
  // p(t) = p_bar + (p0 - p_bar) exp(-rate t)
  struct Exponential {
    double p0;
    double p_bar;
    double rate;
  };
  // p0 before t0, p1 after t1, cubic 3s^2 - 2s^3 blend in between.
  struct Smoothstep {
    double p0;
    double p1;
    double t0;
    double t1;
  };
  // Samples plus their monotone cubic interpolant; defined in the implementation file.
  struct Tabulated;
  // Analytic callables supplied by the oracles (induced or manufactured boundary pressure).
  struct Custom {
    std::function<PressureValue(double)> eval;
    std::optional<double> limit;
    std::function<double(double)> tail_variation;  // may be empty
    std::string label;
  };

  static PressureSchedule constant(double p_bar);
  static PressureSchedule exponential(double p0, double p_bar, double rate);
  static PressureSchedule smoothstep(double p0, double p1, double t0, double t1);
  // Monotone C1 cubic (PCHIP) through (times[k], values[k]); times start at 0, at least 4 samples.
  static PressureSchedule tabulated(std::vector<double> times, std::vector<double> values);
  static PressureSchedule custom(Custom spec);

  ScheduleKind kind() const noexcept;

  // (p(t), p'(t)); throws RangeError outside the domain, DomainError for t < 0.
  PressureValue operator()(double t) const;
  double p(double t) const { return (*this)(t).p; }

  // End of the domain (infinity except for tabulated schedules).
  double domain_end() const noexcept;

  bool has_analytic_integral() const noexcept;
  // Integral of p over [0, t]. Closed form for constant/exponential/smoothstep, exact per-segment
  // Simpson for tabulated (the interpolant is cubic), composite Simpson for custom.
  double integral(double t) const;

  // Limit value p_bar; empty when the kind cannot supply one.
  std::optional<double> limit() const;
  // True when the limit is the last tabulated sample rather than an established plateau.
  bool limit_is_estimated() const noexcept;

  // Integral of |p'| over [t, infinity) (over [t, domain_end) for tabulated).
  double tail_variation(double t) const;

  const auto& spec() const noexcept { return spec_; }

 private:
  using Spec = std::variant<Constant, Exponential, Smoothstep, std::shared_ptr<const Tabulated>, Custom>;
  explicit PressureSchedule(Spec spec) : spec_(std::move(spec)) {}

  Spec spec_;
};

struct ScheduleStats {
  double horizon = 0.0;
  double m_p = 0.0;  // inf p over [0, horizon]
  double M_p = 0.0;  // sup p over [0, horizon]
  double I_p = 0.0;  // integral of |p'| over [0, horizon]
  std::optional<double> P_bar;
  bool P_bar_estimated = false;
  PressureSchedule schedule = PressureSchedule::constant(1.0);

  double tail_Ip(double t) const { return schedule.tail_variation(t); }
};

PressureValue schedule_eval(const PressureSchedule& schedule, double t);

// Extremes and total variation over [0, horizon]; horizon may be kInfiniteHorizon for the
// analytic kinds. Throws ScheduleError when a non-positive pressure is detected.
ScheduleStats schedule_stats(const PressureSchedule& schedule, double horizon);

}  // namespace outerpress
