#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "outerpress/harness/report.hpp"
#include "outerpress/harness/run_io.hpp"
#include "outerpress/harness/runner.hpp"
#include "outerpress/harness/verify.hpp"

using namespace outerpress;
using namespace outerpress::harness;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "outerpress_runio" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_config(const std::string& extra = "") {
  return parse_config("grid.n = 16\ntime.dt = 1e-2\ntime.t_end = 2\noutput.stride = 5\n"
                      "schedule.kind = exponential\ninitial.kind = sine\n" +
                      extra);
}

}  // namespace

TEST_SUITE("run-io") {
  TEST_CASE("series schema") {
    const std::vector<std::string> expected = {
        "t",       "total_energy", "entropy_functional", "dissipation_V", "theta_mean", "v_mean",   "min_v",
        "max_v",   "min_theta",    "max_theta",          "int_vx2",       "int_ux2",    "int_thetax2", "momentum",
        "Y",       "F",            "energy_residual",    "h1_v",          "h1_u",       "h1_theta"};
    CHECK(series_columns() == expected);
  }

  TEST_CASE("series round trip keeps every digit") {
    DiagnosticsSample s;
    s.t = 0.1;
    s.total_energy = 1.0 / 3.0;
    s.F = 1e-300;
    std::vector<DiagnosticsSample> rows{s, s};
    rows[1].t = 0.2;
    const auto dir = fresh_dir("roundtrip");
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "s.csv");
      write_series_csv(out, rows);
    }
    const Table t = read_csv(dir / "s.csv");
    CHECK(t.header == series_columns());
    CHECK(t.column("t")[1] == 0.2);
    CHECK(t.column("total_energy")[0] == 1.0 / 3.0);
    CHECK(t.column("F")[0] == 1e-300);
    CHECK_THROWS_AS(t.column("nope"), InputError);
  }

  TEST_CASE("malformed CSV") {
    const auto dir = fresh_dir("bad_csv");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "a.csv") << "t,y\n0,1\n1\n";
    CHECK_THROWS_AS(read_csv(dir / "a.csv"), InputError);
    std::ofstream(dir / "b.csv") << "t,y\n0,abc\n";
    CHECK_THROWS_AS(read_csv(dir / "b.csv"), InputError);
    CHECK_THROWS_AS(read_csv(dir / "missing.csv"), InputError);
  }

  TEST_CASE("execute a small run and write artifacts") {
    const RunConfig c = small_config("output.snapshots = true\n");
    const RunOutcome o = execute(c);
    CHECK(o.summary.status == RunStatus::completed);
    CHECK(o.summary.final_time == doctest::Approx(2.0));
    CHECK(o.summary.steps == 200);
    CHECK(o.summary.stationary.has_value());
    CHECK(o.summary.jensen.passed);
    CHECK(o.summary.observed_min_v <= o.summary.final_min_v);
    CHECK(o.result.series.size() == 41);
    CHECK(std::isfinite(o.result.series.back().h1_v));

    const auto dir = fresh_dir("artifacts");
    write_artifacts(dir, c, o);
    for (const char* f : {kSeriesFile, kSummaryFile, kConfigFile, kVersionFile, kTimingFile, kFinalStateFile,
                          kSnapshotCellsFile, kSnapshotNodesFile}) {
      CHECK(std::filesystem::is_regular_file(dir / f));
    }
    CHECK(slurp(dir / kConfigFile) == c.source);
    CHECK(slurp(dir / kVersionFile).starts_with("outerpress "));
    const auto j = nlohmann::json::parse(slurp(dir / kSummaryFile));
    CHECK(j["status"] == "completed");
    CHECK_FALSE(j.contains("wall_clock_seconds"));
    CHECK(read_csv(dir / kSeriesFile).columns[0].size() == 41);

    const std::string report = render_report(dir);
    for (const char* section : {"Bounds", "Conservation", "Stationary state", "Envelopes", "Decay rates"}) {
      CHECK(report.find(section) != std::string::npos);
    }
    CHECK(report.find("Jensen bracket") != std::string::npos);
  }

  TEST_CASE("summary is reproducible and reparses") {
    const RunConfig c = small_config();
    const std::string a = summary_json(execute(c).summary);
    const std::string b = summary_json(execute(c).summary);
    CHECK(a == b);
    const auto j = nlohmann::json::parse(a);
    CHECK(j.contains("lambda_int_u2"));
    CHECK(j.contains("v_hat"));
  }

  TEST_CASE("NaN values become null") {
    RunSummary s;
    s.h1_v = std::nan("");
    const auto j = nlohmann::json::parse(summary_json(s));
    CHECK(j["h1_v"].is_null());
    CHECK(j["v_hat"].is_null());
  }

  TEST_CASE("solver breakdown is reported in the status") {
    RunConfig c = parse_config("grid.n = 4\ntime.dt = 0.1\ntime.t_end = 1\nschedule.p_bar = 10000\n");
    const RunOutcome o = execute(c);
    CHECK(o.summary.status == RunStatus::volume_collapse);
    CHECK(exit_code(o.summary.status) == 4);
    CHECK(o.summary.message.find("volume collapse") != std::string::npos);
    CHECK(to_string(RunStatus::floor_breach) == "floor-breach");
    CHECK(exit_code(RunStatus::floor_breach) == 3);
    CHECK(exit_code(RunStatus::config_error) == 2);
    CHECK(exit_code(RunStatus::completed) == 0);
  }

  TEST_CASE("report on an incomplete directory lists what is missing") {
    const auto dir = fresh_dir("incomplete");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / kSeriesFile) << "t\n";
    try {
      render_report(dir);
      FAIL("expected MissingArtifactsError");
    } catch (const MissingArtifactsError& e) {
      CHECK(e.missing().size() == 3);
      CHECK(std::string(e.what()).find("summary.json") != std::string::npos);
    }
  }

  TEST_CASE("verification suites") {
    CHECK(suite_names().size() == 5);
    CHECK(suite_criteria("conservation") == std::vector<int>{1, 2, 3});
    CHECK(suite_criteria("oracles") == std::vector<int>{5, 6});
    CHECK(suite_criteria("mms") == std::vector<int>{4});
    CHECK(suite_criteria("convergence-to-stationary") == std::vector<int>{9, 10});
    CHECK(suite_criteria("bounds") == std::vector<int>{7, 8});
    CHECK(suite_criteria("all").size() == 10);
    CHECK_THROWS_AS(suite_criteria("everything"), InputError);
    CHECK(suite_threads() >= 1);
    CriterionResult r{4, "mms-convergence", true, "orders 2.0", 1.5};
    CHECK(format_result(r).starts_with("PASS  C4 mms-convergence"));
    r.passed = false;
    CHECK(format_result(r).starts_with("FAIL"));
  }

  TEST_CASE("the mms criterion runs through the suite driver") {
    const std::vector<int> ids{4};
    const auto results = run_criteria(ids, 1);
    REQUIRE(results.size() == 1);
    CHECK(results[0].id == 4);
    CHECK(results[0].passed);
  }
}
