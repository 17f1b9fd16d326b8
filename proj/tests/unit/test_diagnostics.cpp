#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "outerpress/diagnostics.hpp"
#include "outerpress/errors.hpp"
#include "outerpress/oracles.hpp"
#include "outerpress/solver.hpp"

using namespace outerpress;

namespace {

constexpr double pi = std::numbers::pi;

FluidState uniform(std::size_t n, double v, double u, double th) {
  return FluidState{std::vector<double>(n, v), std::vector<double>(n, th), std::vector<double>(n + 1, u), 0.0};
}

FluidState theta_profile(std::size_t n, double (*f)(double)) {
  FluidState s = uniform(n, 1.0, 0.0, 1.0);
  const MassGrid g(n);
  for (std::size_t j = 0; j < n; ++j) s.theta[j] = f(g.cell_center(j));
  return s;
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-12);
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("entropy functional examples") {
    CHECK(entropy_functional(uniform(16, 1.0, 0.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(entropy_functional(uniform(16, std::numbers::e, 0.0, 1.0)) ==
          doctest::Approx(2.718281828459045).epsilon(1e-15));
    CHECK(entropy_functional(uniform(16, 1.0, 1.0, 1.0)) == doctest::Approx(2.5).epsilon(1e-15));
    FluidState bad = uniform(4, 1.0, 0.0, 1.0);
    bad.v[2] = -1.0;
    CHECK_THROWS_AS(entropy_functional(bad), DomainError);
    CHECK_THROWS_AS(dissipation_V(bad, ThermoParams{}), DomainError);
  }

  TEST_CASE("dissipation examples") {
    CHECK(dissipation_V(uniform(32, 1.3, 0.2, 0.7), ThermoParams{}) == 0.0);
    for (double beta : {0.0, 0.5, 3.0}) {
      ThermoParams p;
      p.beta = beta;
      FluidState s = uniform(50, 1.0, 0.0, 1.0);
      const MassGrid g(50);
      for (std::size_t i = 0; i <= 50; ++i) s.u[i] = g.node(i);
      CHECK(dissipation_V(s, p) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("dissipation of a sine temperature against adaptive quadrature") {
    // Face differences cover [dx/2, 1 - dx/2]; the end faces carry zero flux.
    auto f = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * pi * x); };
    auto integrand = [](double x) {
      const double th = 1.0 + 0.5 * std::sin(2.0 * pi * x);
      const double thx = pi * std::cos(2.0 * pi * x);
      return thx * thx / th;
    };
    double previous_err = 0.0;
    for (std::size_t n : {256u, 512u}) {
      const double dx = 1.0 / static_cast<double>(n);
      const double ref = gk(integrand, 0.5 * dx, 1.0 - 0.5 * dx);
      const double V = dissipation_V(theta_profile(n, +f), ThermoParams{});
      const double err = std::abs(V - ref);
      CAPTURE(n);
      CHECK(err < 1e-4 * ref);
      if (previous_err > 0.0) CHECK(previous_err / err == doctest::Approx(4.0).epsilon(0.1));
      previous_err = err;
    }
  }

  TEST_CASE("dissipation of an insulated profile converges to the full integral") {
    auto f = [](double x) { return 1.0 + 0.5 * std::cos(2.0 * pi * x); };
    auto integrand = [](double x) {
      const double th = 1.0 + 0.5 * std::cos(2.0 * pi * x);
      const double thx = -pi * std::sin(2.0 * pi * x);
      return thx * thx / th;
    };
    const double ref = gk(integrand, 0.0, 1.0);
    const double V = dissipation_V(theta_profile(256, +f), ThermoParams{});
    CHECK(std::abs(V - ref) < 1e-4 * ref);
  }

  TEST_CASE("gradient norms") {
    const GradNorms zero = grad_norms(uniform(20, 1.0, 0.5, 2.0));
    CHECK(zero.int_vx2 == 0.0);
    CHECK(zero.int_ux2 == 0.0);
    CHECK(zero.int_thetax2 == 0.0);

    FluidState s = uniform(37, 1.0, 0.0, 1.0);
    const MassGrid g(37);
    for (std::size_t i = 0; i <= 37; ++i) s.u[i] = g.node(i);
    CHECK(grad_norms(s).int_ux2 == doctest::Approx(1.0).epsilon(1e-14));

    FluidState w = uniform(256, 1.0, 0.0, 1.0);
    const MassGrid g256(256);
    for (std::size_t j = 0; j < 256; ++j) w.v[j] = 1.0 + 0.1 * std::sin(2.0 * pi * g256.cell_center(j));
    const double exact = 0.01 * 4.0 * pi * pi / 2.0;
    CHECK(exact == doctest::Approx(0.19739).epsilon(1e-5));
    CHECK(std::abs(grad_norms(w).int_vx2 - exact) < 10.0 * exact / (256.0 * 256.0));
  }

  TEST_CASE("H1 distances") {
    const FluidState eq = equilibrium_state(2.0, 0.75, MassGrid(16));
    const H1Distance z = h1_distance(eq, 0.75, 1.5);
    CHECK(z.v == 0.0);
    CHECK(z.u == 0.0);
    CHECK(z.theta == 0.0);
    FluidState shifted = eq;
    for (double& v : shifted.v) v += 0.1;
    CHECK(h1_distance(shifted, 0.75, 1.5).v == doctest::Approx(0.1).epsilon(1e-14));

    // v = v_hat + a sin(2 pi x): squared norm a^2 / 2 + a^2 (2 pi)^2 / 2.
    const std::size_t n = 512;
    const MassGrid g(n);
    FluidState s = uniform(n, 1.0, 0.0, 1.0);
    const double a = 0.05;
    for (std::size_t j = 0; j < n; ++j) s.v[j] = 1.0 + a * std::sin(2.0 * pi * g.cell_center(j));
    const double exact = std::sqrt(a * a / 2.0 * (1.0 + 4.0 * pi * pi));
    CHECK(std::abs(h1_distance(s, 1.0, 1.0).v - exact) < 1e-4 * exact);
  }

  TEST_CASE("Jensen roots") {
    const JensenBounds one = jensen_bounds(1.0);
    CHECK(one.alpha1 == 1.0);
    CHECK(one.alpha2 == 1.0);
    const JensenBounds two = jensen_bounds(2.0);
    CHECK(two.alpha1 == doctest::Approx(0.158594).epsilon(1e-5));
    CHECK(two.alpha2 == doctest::Approx(3.146193).epsilon(1e-6));
    for (double C0 : {1.0 + 1e-9, 1.5, 2.0, 7.0, 50.0}) {
      CAPTURE(C0);
      const JensenBounds b = jensen_bounds(C0);
      CHECK(b.alpha1 > 0.0);
      CHECK(b.alpha1 <= 1.0);
      CHECK(b.alpha2 >= 1.0);
      CHECK(std::abs(b.alpha1 - std::log(b.alpha1) - C0) < 1e-12);
      CHECK(std::abs(b.alpha2 - std::log(b.alpha2) - C0) < 1e-12);
    }
    CHECK_THROWS_AS(jensen_bounds(0.99), DomainError);
  }

  TEST_CASE("Jensen check on an equilibrium sample") {
    const FluidState eq = equilibrium_state(1.0, 1.0, MassGrid(8));
    const DiagnosticsSample s = sample_diagnostics(eq, ThermoParams{}, 1.0);
    const std::vector<DiagnosticsSample> series{s};
    const JensenReport r = jensen_check(series);
    const JensenBounds b = jensen_bounds(2.0);
    CHECK(r.passed);
    CHECK(r.final_C0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.worst_margin == doctest::Approx(std::min(1.0 - b.alpha1, b.alpha2 - 1.0)).epsilon(1e-12));
  }

  TEST_CASE("Jensen check flags a violation") {
    DiagnosticsSample s;
    s.entropy_functional = 2.0;
    s.theta_mean = 5.0;
    const std::vector<DiagnosticsSample> series{s};
    const JensenReport r = jensen_check(series);
    CHECK_FALSE(r.passed);
    CHECK(r.violations == 1);
    CHECK(r.worst_margin < 0.0);
  }

  TEST_CASE("Y and F examples") {
    const auto c = PressureSchedule::constant(1.0);
    CHECK(Y_of_t(c, 2.0) == doctest::Approx(7.389056098930650).epsilon(1e-14));
    for (double P : {0.5, 1.0, 2.0}) {
      for (double t : {0.0, 0.3, 4.0}) {
        CHECK(F_of_t(PressureSchedule::constant(P), t, P) == doctest::Approx(std::exp(-2.0 * P * t)).epsilon(1e-13));
      }
    }
    const auto e = PressureSchedule::exponential(2.0, 1.0, 1.0);
    CHECK(Y_of_t(e, 1.0) == doctest::Approx(std::exp(1.0 + (1.0 - std::exp(-1.0)))).epsilon(1e-14));
  }

  TEST_CASE("F middle term against adaptive quadrature") {
    const auto e = PressureSchedule::exponential(2.0, 1.0, 1.0);
    auto P = [](double t) { return t + (1.0 - std::exp(-t)); };  // integral of 1 + e^{-t}
    for (double t : {0.5, 1.0, 3.0}) {
      const double middle =
          gk([&](double tau) { return std::exp(P(tau) - P(t)) * (1.0 - (1.0 + std::exp(-tau))); }, 0.0, t);
      const double ref = std::exp(-2.0 * P(t)) + middle * middle + std::exp(-t);
      CAPTURE(t);
      CHECK(std::abs(F_of_t(e, t, 1.0) - ref) < 1e-10 * ref);
    }
  }

  TEST_CASE("energy balance residual") {
    const FluidState eq = equilibrium_state(1.0, 1.0, MassGrid(8));
    std::vector<DiagnosticsSample> series;
    for (int k = 0; k < 5; ++k) {
      FluidState s = eq;
      s.t = 0.5 * k;
      series.push_back(sample_diagnostics(s, ThermoParams{}, 1.0));
    }
    for (double r : energy_balance_residual(series, PressureSchedule::constant(1.0))) CHECK(std::abs(r) < 1e-15);
    series[2].total_energy += 0.25;
    const auto r = energy_balance_residual(series, PressureSchedule::constant(1.0));
    CHECK(r[2] == doctest::Approx(0.25));
    std::swap(series[1], series[3]);
    CHECK_THROWS_AS(energy_balance_residual(series, PressureSchedule::constant(1.0)), InputError);
  }

  TEST_CASE("sample diagnostics of a uniform state") {
    const FluidState s = uniform(10, 2.0, 0.5, 3.0);
    ThermoParams p;
    p.c_v = 1.5;
    const DiagnosticsSample d = sample_diagnostics(s, p, 0.7);
    CHECK(d.total_energy == doctest::Approx(1.5 * 3.0 + 0.125 + 0.7 * 2.0).epsilon(1e-14));
    CHECK(d.momentum == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.v_mean == 2.0);
    CHECK(d.theta_mean == 3.0);
    CHECK(d.min_v == 2.0);
    CHECK(d.max_theta == 3.0);
    CHECK(d.dissipation_V == 0.0);
  }
}
