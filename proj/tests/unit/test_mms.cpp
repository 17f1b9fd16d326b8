#include <doctest.h>

#include <cmath>
#include <numbers>

#include "outerpress/errors.hpp"
#include "outerpress/oracles.hpp"

using namespace outerpress;

namespace {

constexpr double k = 2.0 * std::numbers::pi;

// Targets written out independently of the library.
struct Targets {
  MmsCase c;
  double v(double x, double t) const { return c.a0 - k * c.b1 * std::cos(k * x) * std::exp(-t); }
  double u(double x, double t) const { return c.b1 * std::sin(k * x) * std::exp(-t); }
  double th(double x, double t) const { return c.d0 + c.d1 * std::cos(k * x) * std::exp(-t); }
};

constexpr double h = 1e-5;

template <class F>
double ddx(F f, double x, double t) {
  return (f(x + h, t) - f(x - h, t)) / (2.0 * h);
}
template <class F>
double ddt(F f, double x, double t) {
  return (f(x, t + h) - f(x, t - h)) / (2.0 * h);
}

struct Residuals {
  double mass, momentum, energy;
};

Residuals finite_difference_residuals(const Targets& T, double x, double t) {
  const ThermoParams& p = T.c.params;
  auto v = [&](double a, double b) { return T.v(a, b); };
  auto u = [&](double a, double b) { return T.u(a, b); };
  auto th = [&](double a, double b) { return T.th(a, b); };
  auto sigma = [&](double a, double b) { return stress(ddx(u, a, b), v(a, b), th(a, b), p); };
  auto flux = [&](double a, double b) { return conductivity(th(a, b), p) * ddx(th, a, b) / v(a, b); };
  const double ux = ddx(u, x, t);
  Residuals r;
  r.mass = ddt(v, x, t) - ux;
  r.momentum = ddt(u, x, t) - ddx(sigma, x, t);
  r.energy = p.c_v * ddt(th, x, t) + p.R * th(x, t) * ux / v(x, t) - ddx(flux, x, t) -
             viscosity(th(x, t), p) * ux * ux / v(x, t);
  return r;
}

void check_close(double a, double b) {
  CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)));
}

}  // namespace

TEST_SUITE("mms") {
  TEST_CASE("targets match the closed forms") {
    const MmsCase c;
    const Targets T{c};
    for (double x : {0.0, 0.3, 0.71, 1.0}) {
      const MmsPoint r = mms_reference(c, x, 0.4);
      CHECK(r.v == doctest::Approx(T.v(x, 0.4)).epsilon(1e-15));
      CHECK(r.u == doctest::Approx(T.u(x, 0.4)).epsilon(1e-15));
      CHECK(r.theta == doctest::Approx(T.th(x, 0.4)).epsilon(1e-15));
    }
    CHECK(c.a1() == doctest::Approx(-k * 0.05));
  }

  TEST_CASE("equilibrium coefficients give zero forcing") {
    MmsCase c;
    c.b1 = 0.0;
    c.d1 = 0.0;
    c.a0 = 1.3;
    c.d0 = 0.9;
    for (double x : {0.1, 0.5, 0.9}) {
      const MmsPoint r = mms_reference(c, x, 0.2);
      CHECK(r.mass_forcing == 0.0);
      CHECK(std::abs(r.momentum_forcing) < 1e-15);
      CHECK(std::abs(r.energy_forcing) < 1e-15);
    }
  }

  TEST_CASE("mass forcing vanishes by construction") {
    const MmsCase c;
    for (double x = 0.0; x <= 1.0; x += 0.0625) CHECK(std::abs(mms_reference(c, x, 0.37).mass_forcing) < 1e-15);
  }

  TEST_CASE("forcing agrees with finite differences of the targets") {
    MmsCase base;
    MmsCase hot;
    hot.params.beta = 2.0;
    hot.params.alpha = 0.5;
    hot.params.c_v = 1.7;
    hot.params.R = 0.6;
    for (const MmsCase& c : {base, hot}) {
      const Targets T{c};
      for (auto [x, t] : {std::pair{0.25, 0.0}, std::pair{0.6, 0.3}, std::pair{0.9, 1.1}}) {
        CAPTURE(x);
        CAPTURE(t);
        const MmsPoint r = mms_reference(c, x, t);
        const Residuals fd = finite_difference_residuals(T, x, t);
        check_close(r.mass_forcing, fd.mass);
        check_close(r.momentum_forcing, fd.momentum);
        check_close(r.energy_forcing, fd.energy);
      }
    }
  }

  TEST_CASE("targets are insulated at both ends") {
    const MmsCase c;
    const Targets T{c};
    auto th = [&](double a, double b) { return T.th(a, b); };
    CHECK(std::abs(ddx(th, 0.0, 0.2)) < 1e-10);
    CHECK(std::abs(ddx(th, 1.0, 0.2)) < 1e-10);
  }

  TEST_CASE("boundary pressure equals minus the target stress at both ends") {
    MmsCase c;
    c.params.alpha = 0.5;
    const Targets T{c};
    const auto s = mms_schedule(c);
    auto u = [&](double a, double b) { return T.u(a, b); };
    for (double t : {0.0, 0.4, 2.0}) {
      for (double x : {0.0, 1.0}) {
        const double sig = stress(ddx(u, x, t), T.v(x, t), T.th(x, t), c.params);
        CHECK(std::abs(s.p(t) + sig) < 1e-9);
      }
      const double dp = (s.p(t + h) - s.p(std::max(0.0, t - h))) / (t > 0.0 ? 2.0 * h : h);
      CHECK(std::abs(s(t).dp - dp) < 1e-5);
    }
    CHECK(*s.limit() == doctest::Approx(1.0));
  }

  TEST_CASE("case validation") {
    MmsCase c;
    c.b1 = 0.2;  // |a1| = 0.4 pi > a0
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = MmsCase{};
    c.d1 = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
  }

  TEST_CASE("errors vanish for an exactly sampled state") {
    const MmsCase c;
    const MassGrid g(32);
    FluidState s = init_state(g, mms_initial_data(c)).state;
    const MmsErrors e = mms_errors(c, s);
    CHECK(e.v == 0.0);
    CHECK(e.u == 0.0);
    CHECK(e.theta == 0.0);
    for (double& v : s.v) v += 0.01;
    CHECK(mms_errors(c, s).v == doctest::Approx(0.01).epsilon(1e-12));
  }

  TEST_CASE("manufactured run converges at second order") {
    const MmsCase c;
    double prev_u = 0.0;
    for (std::size_t n : {16u, 32u}) {
      const double dx = 1.0 / static_cast<double>(n);
      SolverConfig cfg;
      cfg.dt = 0.5 * dx * dx;
      cfg.t_end = 0.25;
      cfg.mms_enabled = true;
      cfg.store_history_every = 100000;
      const SourceTerms f = mms_forcing(c);
      const RunResult r = run(MassGrid(n), mms_initial_data(c), mms_schedule(c), c.params, cfg, &f);
      const MmsErrors e = mms_errors(c, r.final_state);
      if (prev_u > 0.0) CHECK(std::log2(prev_u / e.u) > 1.8);
      prev_u = e.u;
    }
  }
}
