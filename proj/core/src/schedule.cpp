#include "outerpress/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "outerpress/errors.hpp"

// Boost 1.74's pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

namespace outerpress {

struct PressureSchedule::Tabulated {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> cumulative;  // integral of p from 0 to times[k]
  boost::math::interpolators::pchip<std::vector<double>> interp;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ScheduleError(std::string(what) + " must be positive and finite, got " +
                        std::to_string(value));
  }
}

// Composite Simpson with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, std::size_t panels) {
  if (b <= a) return 0.0;
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + static_cast<double>(k) * h);
  }
  return sum * h / 3.0;
}

std::size_t panels_for(double length) {
  return std::max<std::size_t>(64, 2 * static_cast<std::size_t>(std::ceil(length / 2e-3)));
}

double smoothstep_blend(double tau) { return tau * tau * (3.0 - 2.0 * tau); }

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::exponential: return "exponential";
    case ScheduleKind::smoothstep: return "smoothstep";
    case ScheduleKind::tabulated: return "tabulated";
    case ScheduleKind::custom: return "custom";
  }
  return "unknown";
}

PressureSchedule PressureSchedule::constant(double p_bar) {
  require_positive(p_bar, "constant schedule p_bar");
  return PressureSchedule(Constant{p_bar});
}

PressureSchedule PressureSchedule::exponential(double p0, double p_bar, double rate) {
  require_positive(p0, "exponential schedule p0");
  require_positive(p_bar, "exponential schedule p_bar");
  require_positive(rate, "exponential schedule rate");
  return PressureSchedule(Exponential{p0, p_bar, rate});
}

PressureSchedule PressureSchedule::smoothstep(double p0, double p1, double t0, double t1) {
  require_positive(p0, "smoothstep schedule p0");
  require_positive(p1, "smoothstep schedule p1");
  if (!(t0 >= 0.0) || !(t1 > t0) || !std::isfinite(t1)) {
    throw ScheduleError("smoothstep schedule needs 0 <= t0 < t1 < infinity");
  }
  return PressureSchedule(Smoothstep{p0, p1, t0, t1});
}

PressureSchedule PressureSchedule::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size()) {
    throw ScheduleError("tabulated schedule: times and values differ in length");
  }
  if (times.size() < 4) {
    throw ScheduleError("tabulated schedule needs at least 4 samples");
  }
  if (times.front() != 0.0) {
    throw ScheduleError("tabulated schedule must start at t = 0");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    require_positive(values[k], "tabulated schedule value");
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw ScheduleError("tabulated schedule times must be strictly increasing (sample " +
                          std::to_string(k) + ")");
    }
  }
  auto interp = boost::math::interpolators::pchip<std::vector<double>>(std::vector<double>(times),
                                                                       std::vector<double>(values));
  std::vector<double> cumulative(times.size(), 0.0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double a = times[k - 1];
    const double b = times[k];
    // Simpson is exact on each cubic Hermite piece.
    cumulative[k] = cumulative[k - 1] + (b - a) / 6.0 * (values[k - 1] + 4.0 * interp(0.5 * (a + b)) + values[k]);
  }
  auto table = std::make_shared<const Tabulated>(
      Tabulated{std::move(times), std::move(values), std::move(cumulative), std::move(interp)});
  return PressureSchedule(std::move(table));
}

PressureSchedule PressureSchedule::custom(Custom spec) {
  if (!spec.eval) throw ScheduleError("custom schedule needs an evaluation function");
  if (spec.limit) require_positive(*spec.limit, "custom schedule limit");
  return PressureSchedule(std::move(spec));
}

ScheduleKind PressureSchedule::kind() const noexcept {
  return std::visit(Overloaded{
                        [](const Constant&) { return ScheduleKind::constant; },
                        [](const Exponential&) { return ScheduleKind::exponential; },
                        [](const Smoothstep&) { return ScheduleKind::smoothstep; },
                        [](const std::shared_ptr<const Tabulated>&) { return ScheduleKind::tabulated; },
                        [](const Custom&) { return ScheduleKind::custom; },
                    },
                    spec_);
}

double PressureSchedule::domain_end() const noexcept {
  if (const auto* table = std::get_if<std::shared_ptr<const Tabulated>>(&spec_)) {
    return (*table)->times.back();
  }
  return kInfiniteHorizon;
}

PressureValue PressureSchedule::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("t", "schedule evaluated at negative time " + std::to_string(t));
  return std::visit(
      Overloaded{
          [](const Constant& c) { return PressureValue{c.p_bar, 0.0}; },
          [t](const Exponential& e) {
            const double decay = std::exp(-e.rate * t);
            return PressureValue{e.p_bar + (e.p0 - e.p_bar) * decay, -e.rate * (e.p0 - e.p_bar) * decay};
          },
          [t](const Smoothstep& s) {
            if (t <= s.t0) return PressureValue{s.p0, 0.0};
            if (t >= s.t1) return PressureValue{s.p1, 0.0};
            const double length = s.t1 - s.t0;
            const double tau = (t - s.t0) / length;
            return PressureValue{s.p0 + (s.p1 - s.p0) * smoothstep_blend(tau),
                                 (s.p1 - s.p0) * 6.0 * tau * (1.0 - tau) / length};
          },
          [t](const std::shared_ptr<const Tabulated>& table) {
            if (t > table->times.back()) {
              throw RangeError("tabulated schedule evaluated at t = " + std::to_string(t) +
                               " beyond its last sample " + std::to_string(table->times.back()));
            }
            return PressureValue{table->interp(t), table->interp.prime(t)};
          },
          [t](const Custom& c) { return c.eval(t); },
      },
      spec_);
}

bool PressureSchedule::has_analytic_integral() const noexcept {
  return kind() != ScheduleKind::custom;
}

double PressureSchedule::integral(double t) const {
  if (!(t >= 0.0)) throw DomainError("t", "schedule integral at negative time");
  return std::visit(
      Overloaded{
          [t](const Constant& c) { return c.p_bar * t; },
          [t](const Exponential& e) { return e.p_bar * t - (e.p0 - e.p_bar) * std::expm1(-e.rate * t) / e.rate; },
          [t](const Smoothstep& s) {
            const double length = s.t1 - s.t0;
            double sum = s.p0 * std::min(t, s.t0);
            if (t > s.t0) {
              const double tau = std::min(1.0, (t - s.t0) / length);
              sum += s.p0 * tau * length + (s.p1 - s.p0) * length * (tau * tau * tau - 0.5 * tau * tau * tau * tau);
            }
            if (t > s.t1) sum += s.p1 * (t - s.t1);
            return sum;
          },
          [t](const std::shared_ptr<const Tabulated>& table) {
            const auto& times = table->times;
            if (t > times.back()) throw RangeError("tabulated schedule integral beyond last sample");
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t k = static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
            const double a = times[k];
            if (t == a) return table->cumulative[k];
            return table->cumulative[k] +
                   (t - a) / 6.0 * (table->interp(a) + 4.0 * table->interp(0.5 * (a + t)) + table->interp(t));
          },
          [t](const Custom& c) {
            return simpson([&c](double s) { return c.eval(s).p; }, 0.0, t, panels_for(t));
          },
      },
      spec_);
}

std::optional<double> PressureSchedule::limit() const {
  return std::visit(Overloaded{
                        [](const Constant& c) -> std::optional<double> { return c.p_bar; },
                        [](const Exponential& e) -> std::optional<double> { return e.p_bar; },
                        [](const Smoothstep& s) -> std::optional<double> { return s.p1; },
                        [](const std::shared_ptr<const Tabulated>& table) -> std::optional<double> {
                          return table->values.back();
                        },
                        [](const Custom& c) { return c.limit; },
                    },
                    spec_);
}

bool PressureSchedule::limit_is_estimated() const noexcept {
  if (const auto* table = std::get_if<std::shared_ptr<const Tabulated>>(&spec_)) {
    const auto& values = (*table)->values;
    return values[values.size() - 1] != values[values.size() - 2];
  }
  return false;
}

double PressureSchedule::tail_variation(double t) const {
  if (!(t >= 0.0)) throw DomainError("t", "tail variation at negative time");
  return std::visit(
      Overloaded{
          [](const Constant&) { return 0.0; },
          [t](const Exponential& e) { return std::abs(e.p0 - e.p_bar) * std::exp(-e.rate * t); },
          [t](const Smoothstep& s) {
            if (t >= s.t1) return 0.0;
            const double tau = t <= s.t0 ? 0.0 : (t - s.t0) / (s.t1 - s.t0);
            return std::abs(s.p1 - s.p0) * (1.0 - smoothstep_blend(tau));
          },
          [t](const std::shared_ptr<const Tabulated>& table) {
            // PCHIP is monotone between knots, so the variation on a piece is |delta p|.
            const auto& times = table->times;
            const auto& values = table->values;
            if (t >= times.back()) return 0.0;
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            std::size_t k = static_cast<std::size_t>(std::distance(times.begin(), it));
            double sum = std::abs(values[k] - table->interp(t));
            for (; k + 1 < times.size(); ++k) sum += std::abs(values[k + 1] - values[k]);
            return sum;
          },
          [t](const Custom& c) {
            if (!c.tail_variation) {
              throw ScheduleError("custom schedule '" + c.label + "' has no tail variation");
            }
            return c.tail_variation(t);
          },
      },
      spec_);
}

PressureValue schedule_eval(const PressureSchedule& schedule, double t) { return schedule(t); }

ScheduleStats schedule_stats(const PressureSchedule& schedule, double horizon) {
  if (!(horizon > 0.0)) throw DomainError("horizon", "schedule statistics need a positive horizon");
  if (horizon > schedule.domain_end()) {
    throw RangeError("horizon " + std::to_string(horizon) + " exceeds the schedule domain end " +
                     std::to_string(schedule.domain_end()));
  }
  ScheduleStats stats;
  stats.horizon = horizon;
  stats.schedule = schedule;
  stats.P_bar = schedule.limit();
  stats.P_bar_estimated = schedule.limit_is_estimated();

  auto check = [](double p, double t) {
    if (!(p > 0.0)) {
      throw ScheduleError("non-positive pressure " + std::to_string(p) + " at t = " + std::to_string(t));
    }
  };

  const bool infinite = std::isinf(horizon);
  switch (schedule.kind()) {
    case ScheduleKind::constant:
    case ScheduleKind::exponential:
    case ScheduleKind::smoothstep: {
      // Monotone kinds: extremes sit at the ends of the window.
      const double start = schedule.p(0.0);
      const double end = infinite ? *stats.P_bar : schedule.p(horizon);
      check(start, 0.0);
      check(end, horizon);
      stats.m_p = std::min(start, end);
      stats.M_p = std::max(start, end);
      stats.I_p = std::abs(end - start);
      break;
    }
    case ScheduleKind::tabulated: {
      const auto& table = *std::get<std::shared_ptr<const PressureSchedule::Tabulated>>(schedule.spec());
      double previous = table.values.front();
      stats.m_p = stats.M_p = previous;
      for (std::size_t k = 1; k < table.times.size() && table.times[k - 1] < horizon; ++k) {
        const double t = std::min(table.times[k], horizon);
        const double p = t == table.times[k] ? table.values[k] : schedule.p(t);
        check(p, t);
        stats.m_p = std::min(stats.m_p, p);
        stats.M_p = std::max(stats.M_p, p);
        stats.I_p += std::abs(p - previous);
        previous = p;
      }
      break;
    }
    case ScheduleKind::custom: {
      if (infinite) throw ScheduleError("custom schedules need a finite horizon for statistics");
      const std::size_t samples = std::max<std::size_t>(4096, static_cast<std::size_t>(horizon / 1e-3));
      const double h = horizon / static_cast<double>(samples);
      double previous_abs_dp = 0.0;
      for (std::size_t k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) * h;
        const auto value = schedule(t);
        check(value.p, t);
        if (k == 0) {
          stats.m_p = stats.M_p = value.p;
        } else {
          stats.m_p = std::min(stats.m_p, value.p);
          stats.M_p = std::max(stats.M_p, value.p);
          stats.I_p += 0.5 * h * (previous_abs_dp + std::abs(value.dp));
        }
        previous_abs_dp = std::abs(value.dp);
      }
      if (!stats.P_bar) {
        stats.P_bar = schedule.p(horizon);
        stats.P_bar_estimated = true;
      }
      break;
    }
  }
  return stats;
}

}  // namespace outerpress
