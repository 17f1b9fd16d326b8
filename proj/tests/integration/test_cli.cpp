#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = OUTERPRESS_TEST_WORKDIR;

struct Result {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string& args) {
  fs::create_directories(kWork);
  const fs::path log = kWork / "last_output.txt";
  const std::string cmd = "cd '" + kWork.string() + "' && '" + OUTERPRESS_CLI + "' " + args + " > '" + log.string() +
                          "' 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::create_directories(kWork);
  std::ofstream(kWork / name, std::ios::binary) << body;
  return kWork / name;
}

const char* kSmallRun =
    "grid.n = 32\ntime.dt = 5e-3\ntime.t_end = 3\noutput.stride = 10\nparams.beta = 1\n"
    "schedule.kind = exponential\nschedule.p0 = 2\nschedule.p_bar = 1\nschedule.rate = 1\n"
    "initial.kind = sine\ninitial.amplitude = 0.1\ninitial.u_amplitude = 0.05\ninitial.seed = 1234\n"
    "output.snapshots = true\n";

}  // namespace

TEST_CASE("run the equilibrium preset") {
  fs::remove_all(kWork / "eq");
  const Result r = cli("run --preset equilibrium --out eq --quiet");
  CHECK(r.code == 0);
  for (const char* f : {"series.csv", "summary.json", "config.txt", "version.txt", "final_state.csv"}) {
    CHECK(fs::is_regular_file(kWork / "eq" / f));
  }
  const auto j = nlohmann::json::parse(slurp(kWork / "eq" / "summary.json"));
  CHECK(j["status"] == "completed");
  CHECK(j["h1_v"].get<double>() < 1e-10);
  CHECK(j["h1_u"].get<double>() < 1e-10);
  CHECK(j["max_momentum_drift"].get<double>() < 1e-12);
  CHECK(j["jensen_passed"].get<bool>());

  const Result rep = cli("report eq");
  CHECK(rep.code == 0);
  CHECK(rep.out.find("Stationary state") != std::string::npos);
  CHECK(rep.out.find("Jensen bracket") != std::string::npos);
}

TEST_CASE("non-positive initial pressure is a config error and writes nothing") {
  write_file("bad_p0.cfg", "schedule.kind = exponential\nschedule.p0 = 0\n");
  fs::remove_all(kWork / "bad");
  const Result r = cli("run --config bad_p0.cfg --out bad");
  CHECK(r.code == 2);
  CHECK(r.out.find("line 2") != std::string::npos);
  CHECK(r.out.find("schedule.p0") != std::string::npos);
  CHECK_FALSE(fs::exists(kWork / "bad"));
}

TEST_CASE("reruns are byte-identical") {
  write_file("small.cfg", kSmallRun);
  fs::remove_all(kWork / "a");
  fs::remove_all(kWork / "b");
  REQUIRE(cli("run --config small.cfg --out a --quiet").code == 0);
  REQUIRE(cli("run --config small.cfg --out b --quiet").code == 0);
  for (const char* f : {"series.csv", "summary.json", "config.txt", "version.txt", "final_state.csv",
                        "snapshots_cells.csv", "snapshots_nodes.csv"}) {
    CAPTURE(f);
    const std::string a = slurp(kWork / "a" / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(kWork / "b" / f));
  }
  CHECK(slurp(kWork / "a" / "config.txt") == kSmallRun);
}

TEST_CASE("fit a synthetic series") {
  std::ostringstream csv;
  csv << "t,decay,flat\n";
  for (int k = 0; k < 40; ++k) {
    const double t = 0.1 * k;
    char row[128];
    std::snprintf(row, sizeof row, "%.17g,%.17g,3\n", t, 5.0 * std::exp(-2.0 * t));
    csv << row;
  }
  write_file("synthetic.csv", csv.str());
  const Result r = cli("fit synthetic.csv --column decay");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lambda"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(j["r_squared"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  const Result flat = cli("fit synthetic.csv --column flat --window-start 1.0");
  REQUIRE(flat.code == 0);
  const auto k = nlohmann::json::parse(flat.out);
  CHECK(std::abs(k["lambda"].get<double>()) < 1e-14);
  CHECK(k["t_start"].get<double>() >= 1.0);

  CHECK(cli("fit synthetic.csv --column missing").code == 1);
  CHECK(cli("fit absent.csv --column decay").code != 0);
}

TEST_CASE("report on an incomplete directory") {
  fs::create_directories(kWork / "empty_run");
  const Result r = cli("report empty_run");
  CHECK(r.code == 1);
  CHECK(r.out.find("summary.json") != std::string::npos);
  CHECK(r.out.find("series.csv") != std::string::npos);
}

TEST_CASE("verify rejects unknown suites and runs a real one") {
  CHECK(cli("verify --suite everything").code != 0);
  const Result r = cli("verify --suite mms");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  C4") != std::string::npos);
}

TEST_CASE("command-line misuse") {
  CHECK(cli("").code != 0);
  CHECK(cli("launch").code == 2);
  CHECK(cli("run --preset nope --out x").code == 2);
  CHECK(cli("run --preset equilibrium --config small.cfg").code == 2);
}
