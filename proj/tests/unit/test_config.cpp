#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "outerpress/harness/config.hpp"
#include "outerpress/harness/presets.hpp"

using namespace outerpress;
using namespace outerpress::harness;

namespace {

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected ConfigError for: " << text);
  return ConfigError(0, "", "");
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    const RunConfig c = parse_config("");
    CHECK(c.n_cells == 256);
    CHECK(c.solver.dt == 1e-3);
    CHECK(c.schedule.kind() == ScheduleKind::constant);
    CHECK(std::holds_alternative<ConstantInit>(c.initial));
    CHECK_FALSE(c.write_snapshots);
  }

  TEST_CASE("full key set") {
    const RunConfig c = parse_config(R"(# comment
grid.n = 64
time.dt = 2e-3   # trailing comment
time.t_end = 3
time.cfl = 0.4
solver.theta_floor = 1e-8
output.stride = 5
output.snapshots = true
stationary.tolerance = 1e-6
params.R = 0.5
params.cv = 2
params.mu = 1.5
params.kappa = 0.7
params.alpha = 0
params.beta = 2
schedule.kind = smoothstep
schedule.p0 = 1
schedule.p1 = 2
schedule.t0 = 0.5
schedule.t1 = 1.5
initial.kind = sine
initial.v0 = 2
initial.u0 = 0
initial.theta0 = 3
initial.amplitude = 0.2
initial.u_amplitude = 0.1
initial.theta_amplitude = 0.3
initial.wavenumber = 2
initial.seed = 17
)");
    CHECK(c.n_cells == 64);
    CHECK(c.solver.dt == 2e-3);
    CHECK(c.solver.t_end == 3.0);
    CHECK(*c.solver.cfl_factor == 0.4);
    CHECK(c.solver.theta_floor == 1e-8);
    CHECK(c.solver.store_history_every == 5);
    CHECK(c.write_snapshots);
    CHECK(c.stationary_tolerance == 1e-6);
    CHECK(c.params.R == 0.5);
    CHECK(c.params.c_v == 2.0);
    CHECK(c.params.mu_tilde == 1.5);
    CHECK(c.params.kappa_tilde == 0.7);
    CHECK(c.params.beta == 2.0);
    CHECK(c.schedule.kind() == ScheduleKind::smoothstep);
    CHECK(c.schedule.p(2.0) == 2.0);
    const auto& s = std::get<SineInit>(c.initial);
    CHECK(s.v_base == 2.0);
    CHECK(s.theta_amplitude == 0.3);
    CHECK(s.wavenumber == 2);
    CHECK(s.seed == 17);
  }

  TEST_CASE("tabulated schedule lists") {
    const RunConfig c =
        parse_config("schedule.kind = tabulated\nschedule.times = 0, 1, 2, 3\nschedule.values = 2, 1.5, 1, 1\n");
    CHECK(c.schedule.kind() == ScheduleKind::tabulated);
    CHECK(c.schedule.p(1.0) == doctest::Approx(1.5));
  }

  TEST_CASE("non-positive initial pressure is a config error with its line") {
    const auto e = config_error("schedule.kind = exponential\nschedule.p0 = -1\n");
    CHECK(e.line() == 2);
    CHECK(e.field() == "schedule.p0");
    const auto z = config_error("schedule.kind = exponential\nschedule.p0 = 0\n");
    CHECK(z.field() == "schedule.p0");
  }

  TEST_CASE("malformed lines and keys") {
    CHECK(config_error("grid.n = 8\nthis is not a pair\n").line() == 2);
    CHECK(config_error("grid.size = 8\n").field() == "grid.size");
    CHECK(config_error("grid.n = 8\ngrid.n = 9\n").field() == "grid.n");
    CHECK(config_error("grid.n = eight\n").field() == "grid.n");
    CHECK(config_error("time.dt = 1e-3x\n").field() == "time.dt");
    CHECK(config_error("time.dt = -1\n").field() == "time.dt");
    CHECK(config_error("grid.n = 1\n").field() == "grid.n");
    CHECK(config_error("time.dt =\n").field() == "time.dt");
    CHECK(config_error("params.cv = 0\n").field() == "params.cv");
    CHECK(config_error("output.stride = 0\n").field() == "output.stride");
    CHECK(config_error("output.snapshots = yes\n").field() == "output.snapshots");
    CHECK(config_error("schedule.kind = wavy\n").field() == "schedule.kind");
    CHECK(config_error("initial.kind = noise\n").field() == "initial.kind");
    CHECK(config_error("initial.kind = sine\ninitial.amplitude = 1.5\n").field() == "initial.amplitude");
    CHECK(config_error("schedule.rate = 2\n").field() == "schedule.rate");
    CHECK(config_error("preset = nope\n").field() == "preset");
  }

  TEST_CASE("error messages carry line and field") {
    const auto e = config_error("\n\ntime.dt = -1\n");
    CHECK(std::string(e.what()).starts_with("line 3 (time.dt): "));
  }

  TEST_CASE("presets parse and expose their text") {
    CHECK(preset_names().size() == 6);
    for (const auto& name : preset_names()) {
      CAPTURE(name);
      CHECK(preset_text(name).has_value());
      const RunConfig c = preset_config(name);
      CHECK(c.preset == name);
      CHECK(c.source.find("preset " + name) != std::string::npos);
    }
    CHECK_FALSE(preset_text("missing").has_value());
  }

  TEST_CASE("standard preset contents") {
    const RunConfig c = preset_config("standard-beta1");
    CHECK(c.n_cells == 256);
    CHECK(c.solver.t_end == 200.0);
    CHECK(c.params.beta == 1.0);
    CHECK(c.params.alpha == 0.0);
    CHECK(c.schedule.kind() == ScheduleKind::exponential);
    CHECK(c.schedule.p(0.0) == 2.0);
    CHECK(*c.schedule.limit() == 1.0);
    const auto& s = std::get<SineInit>(c.initial);
    CHECK(s.v_base == 1.0);
    CHECK(s.v_amplitude == 0.1);
    CHECK(s.u_amplitude == 0.0);
    CHECK(s.theta_base == 1.0);
    CHECK(preset_config("standard-beta0.5").params.beta == 0.5);
    CHECK(preset_config("standard-beta2").params.beta == 2.0);
    CHECK(preset_config("contrast-beta0").params.beta == 0.0);
    CHECK(preset_config("standard-constant").schedule.kind() == ScheduleKind::constant);
  }

  TEST_CASE("user keys override a preset") {
    const RunConfig c = parse_config("time.t_end = 1\npreset = standard-beta1\ngrid.n = 32\n");
    CHECK(c.solver.t_end == 1.0);
    CHECK(c.n_cells == 32);
    CHECK(c.params.beta == 1.0);
    const RunConfig k = parse_config("preset = standard-beta1\nschedule.kind = constant\nschedule.p_bar = 2\n");
    CHECK(k.schedule.kind() == ScheduleKind::constant);
    CHECK(k.schedule.p(0.0) == 2.0);
  }

  TEST_CASE("file initial data resolves relative paths against the config") {
    const auto dir = std::filesystem::temp_directory_path() / "outerpress_cfg";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "init.csv") << "x,v0,u0,theta0\n0,1,0,1\n1,1.2,0,1\n";
    std::ofstream(dir / "run.cfg") << "grid.n = 8\ninitial.kind = file\ninitial.path = init.csv\n";
    const RunConfig c = load_config(dir / "run.cfg");
    CHECK(std::holds_alternative<TableInit>(c.initial));
    std::ofstream(dir / "bad.csv") << "x,v0,u0,theta0\n0,1,0,0\n1,1.2,0,1\n";
    std::ofstream(dir / "bad.cfg") << "initial.kind = file\ninitial.path = bad.csv\n";
    try {
      load_config(dir / "bad.cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 2);
      CHECK(e.field() == "initial.path");
    }
    CHECK_THROWS_AS(load_config(dir / "absent.cfg"), ConfigError);
  }
}
