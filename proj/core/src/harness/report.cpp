#include "outerpress/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "outerpress/diagnostics.hpp"
#include "outerpress/harness/run_io.hpp"

namespace outerpress::harness {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string num(const nlohmann::json& j, const char* key, const char* fmt = "%.6g") {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return "n/a";
  if (it->is_boolean()) return it->get<bool>() ? "yes" : "no";
  if (!it->is_number()) return it->dump();
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, it->get<double>());
  return buf;
}

double value(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  return (it == j.end() || !it->is_number()) ? std::nan("") : it->get<double>();
}

std::string fixed(double x, const char* fmt = "%.6g") {
  if (!std::isfinite(x)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

}  // namespace

MissingArtifactsError::MissingArtifactsError(std::vector<std::string> missing)
    : InputError("run directory is missing: " + join(missing)), missing_(std::move(missing)) {}

std::string render_report(const std::filesystem::path& dir) {
  std::vector<std::string> missing;
  for (const char* f : {kSeriesFile, kSummaryFile, kConfigFile, kVersionFile}) {
    if (!std::filesystem::is_regular_file(dir / f)) missing.emplace_back(f);
  }
  if (!missing.empty()) throw MissingArtifactsError(std::move(missing));

  nlohmann::json s;
  {
    std::ifstream in(dir / kSummaryFile);
    try {
      s = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("summary.json is not valid JSON: ") + e.what());
    }
  }
  const Table series = read_csv(dir / kSeriesFile);
  if (series.header != series_columns()) throw InputError("series.csv does not have the expected columns");
  std::string version;
  {
    std::ifstream in(dir / kVersionFile);
    std::getline(in, version);
  }

  std::ostringstream out;
  out << "Run report: " << dir.string() << "\n";
  out << "  version            " << version << "\n";
  out << "  status             " << s.value("status", std::string("unknown"));
  if (const auto msg = s.value("message", std::string()); !msg.empty()) out << " (" << msg << ")";
  out << "\n";
  out << "  final time         " << num(s, "final_time") << " after " << num(s, "steps", "%.0f") << " steps\n\n";

  out << "Bounds\n";
  out << "  v range            [" << num(s, "observed_min_v") << ", " << num(s, "observed_max_v") << "]\n";
  out << "  theta range        [" << num(s, "observed_min_theta") << ", " << num(s, "observed_max_theta") << "]\n";
  const double C0 = value(s, "jensen_C0");
  if (std::isfinite(C0) && C0 >= 1.0) {
    const JensenBounds b = jensen_bounds(C0);
    out << "  Jensen bracket     C0* = " << fixed(C0) << ", mean theta must lie in [" << fixed(b.alpha1) << ", "
        << fixed(b.alpha2) << "]\n";
  }
  out << "  Jensen check       " << (s.value("jensen_passed", false) ? "pass" : "FAIL") << ", worst margin "
      << num(s, "jensen_margin") << " at t = " << num(s, "jensen_worst_time") << "\n\n";

  out << "Conservation\n";
  out << "  momentum drift     " << num(s, "max_momentum_drift", "%.3e") << "\n";
  out << "  energy residual    " << num(s, "peak_energy_residual", "%.3e") << " (peak over samples)\n";
  out << "  initial stress gap " << num(s, "initial_stress_mismatch", "%.3e") << "\n";
  out << "  integral of u0     " << num(s, "u0_integral", "%.3e") << "\n\n";

  out << "Stationary state\n";
  if (s.contains("v_hat") && !s["v_hat"].is_null()) {
    const double dv = std::abs(value(s, "final_v_mean") - value(s, "v_hat"));
    const double dth = std::abs(value(s, "final_theta_mean") - value(s, "theta_hat"));
    out << "  P_bar              " << num(s, "P_bar") << (s.value("P_bar_estimated", false) ? " (estimated)" : "")
        << "\n";
    out << "  v_hat              " << num(s, "v_hat", "%.12g") << " +- " << num(s, "v_uncertainty", "%.3e")
        << "   late mean v " << num(s, "final_v_mean", "%.12g") << "   |diff| " << fixed(dv, "%.3e") << "\n";
    out << "  theta_hat          " << num(s, "theta_hat", "%.12g") << " +- " << num(s, "theta_uncertainty", "%.3e")
        << "   late mean theta " << num(s, "final_theta_mean", "%.12g") << "   |diff| " << fixed(dth, "%.3e")
        << "\n";
    out << "  H1 distances       v " << num(s, "h1_v", "%.3e") << ", u " << num(s, "h1_u", "%.3e") << ", theta "
        << num(s, "h1_theta", "%.3e") << "\n";
    if (s.value("insufficient_horizon", false)) out << "  warning            insufficient horizon\n";
  } else {
    out << "  unavailable: " << s.value("stationary_note", std::string()) << "\n";
  }
  out << "\n";

  out << "Envelopes (selected samples)\n";
  out << "  t               Y(t)            F(t)            |u|_H1\n";
  const auto& t = series.column("t");
  const auto& Y = series.column("Y");
  const auto& F = series.column("F");
  const auto& h1u = series.column("h1_u");
  const std::size_t rows = t.size();
  if (rows > 0) {
    std::vector<std::size_t> picks;
    for (std::size_t q = 0; q <= 4; ++q) picks.push_back(std::min(rows - 1, q * (rows - 1) / 4));
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    for (std::size_t k : picks) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-15.6g %-15.6g %-15.6g %-15s\n", t[k], Y[k], F[k],
                    fixed(h1u[k], "%.6g").c_str());
      out << line;
    }
  }
  out << "\n";

  out << "Decay rates (log-linear fit, latter half of samples above 1e-14)\n";
  out << "  quantity        lambda       r^2          window\n";
  for (const char* q : {"int_u2", "int_ux2", "int_thetax2", "h1_v", "h1_theta"}) {
    const std::string lk = std::string("lambda_") + q;
    const std::string rk = std::string("r2_") + q;
    const std::string sk = std::string("fit_start_") + q;
    const std::string ek = std::string("fit_end_") + q;
    char line[200];
    std::snprintf(line, sizeof line, "  %-15s %-12s %-12s [%s, %s]\n", q, num(s, lk.c_str(), "%.5g").c_str(),
                  num(s, rk.c_str(), "%.6f").c_str(), num(s, sk.c_str()).c_str(), num(s, ek.c_str()).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace outerpress::harness
