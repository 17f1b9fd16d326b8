#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "outerpress/errors.hpp"
#include "outerpress/initial_data.hpp"

using namespace outerpress;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "outerpress_unit";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_SUITE("initial-data") {
  TEST_CASE("constant descriptor gives a uniform state") {
    const auto r = init_state(MassGrid(8), ConstantInit{1.0, 0.0, 1.0});
    CHECK(r.state.v.size() == 8);
    CHECK(r.state.u.size() == 9);
    for (double v : r.state.v) CHECK(v == 1.0);
    for (double th : r.state.theta) CHECK(th == 1.0);
    for (double u : r.state.u) CHECK(u == 0.0);
    CHECK(r.u0_integral == 0.0);
  }

  TEST_CASE("sine descriptor samples cell centers") {
    SineInit s;
    const MassGrid g(1000);
    const auto r = init_state(g, s);
    const double mn = *std::min_element(r.state.v.begin(), r.state.v.end());
    CHECK(mn == doctest::Approx(0.9).epsilon(1e-5));
    for (std::size_t j = 0; j < g.n_cells(); j += 97) {
      CHECK(r.state.v[j] == doctest::Approx(1.0 + 0.1 * std::sin(2.0 * std::numbers::pi * g.cell_center(j))));
    }
  }

  TEST_CASE("seeded phase is deterministic and seed 0 means no shift") {
    SineInit a;
    CHECK(a.phase() == 0.0);
    a.seed = 42;
    SineInit b = a;
    CHECK(a.phase() == b.phase());
    CHECK(a.phase() >= 0.0);
    CHECK(a.phase() < 2.0 * std::numbers::pi);
    b.seed = 43;
    CHECK(a.phase() != b.phase());
  }

  TEST_CASE("u0 integral is recorded, not removed") {
    const auto r = init_state(MassGrid(10), ConstantInit{1.0, 0.25, 1.0});
    CHECK(r.u0_integral == doctest::Approx(0.25).epsilon(1e-14));
    for (double u : r.state.u) CHECK(u == 0.25);
  }

  TEST_CASE("non-positive samples raise an error carrying the location") {
    SineInit s;
    s.v_amplitude = 1.5;
    try {
      init_state(MassGrid(16), s);
      FAIL("expected InitError");
    } catch (const InitError& e) {
      CHECK(e.x() > 0.5);
      CHECK(e.x() < 1.0);
    }
  }

  TEST_CASE("file descriptor with a zero temperature is rejected") {
    const auto path = write_temp("zero_theta.csv", "x,v0,u0,theta0\n0,1,0,1\n0.5,1,0,0\n1,1,0,1\n");
    try {
      load_initial_table(path);
      FAIL("expected InitError");
    } catch (const InitError& e) {
      CHECK(e.x() == 0.5);
    }
  }

  TEST_CASE("file descriptor interpolates linearly") {
    const auto path = write_temp("ramp.csv", "x,v0,u0,theta0\n0,1,0,2\n1,2,0.5,2\n");
    const auto table = load_initial_table(path);
    const MassGrid g(4);
    const auto r = init_state(g, table);
    for (std::size_t j = 0; j < 4; ++j) CHECK(r.state.v[j] == doctest::Approx(1.0 + g.cell_center(j)));
    CHECK(r.state.u[4] == doctest::Approx(0.5));
    CHECK(r.state.theta[2] == 2.0);
  }

  TEST_CASE("malformed files") {
    CHECK_THROWS_AS(load_initial_table(write_temp("hdr.csv", "x,v,u,t\n0,1,0,1\n1,1,0,1\n")), InputError);
    CHECK_THROWS_AS(load_initial_table(write_temp("short.csv", "x,v0,u0,theta0\n0,1,0\n1,1,0,1\n")), InputError);
    CHECK_THROWS_AS(load_initial_table(write_temp("order.csv", "x,v0,u0,theta0\n0,1,0,1\n0,1,0,1\n1,1,0,1\n")),
                    InputError);
    CHECK_THROWS_AS(load_initial_table(write_temp("cover.csv", "x,v0,u0,theta0\n0,1,0,1\n0.9,1,0,1\n")),
                    InputError);
    CHECK_THROWS_AS(load_initial_table("/nonexistent/file.csv"), InputError);
  }
}
