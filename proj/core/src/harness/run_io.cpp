#include "outerpress/harness/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "outerpress/errors.hpp"

namespace outerpress::harness {

namespace {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

void put_fit(nlohmann::json& j, const std::string& name, const FitSummary& f) {
  if (f.fit) {
    j["lambda_" + name] = number_or_null(f.fit->lambda);
    j["r2_" + name] = number_or_null(f.fit->r_squared);
    j["fit_start_" + name] = f.fit->t_start;
    j["fit_end_" + name] = f.fit->t_end;
  } else {
    j["lambda_" + name] = nullptr;
    j["r2_" + name] = nullptr;
    j["fit_start_" + name] = nullptr;
    j["fit_end_" + name] = nullptr;
  }
}

}  // namespace

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> columns = {
      "t",        "total_energy", "entropy_functional", "dissipation_V", "theta_mean",
      "v_mean",   "min_v",        "max_v",              "min_theta",     "max_theta",
      "int_vx2",  "int_ux2",      "int_thetax2",        "momentum",      "Y",
      "F",        "energy_residual", "h1_v",            "h1_u",          "h1_theta"};
  return columns;
}

void write_series_csv(std::ostream& out, std::span<const DiagnosticsSample> series) {
  const auto& cols = series_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  for (const auto& s : series) {
    const double row[] = {s.t,       s.total_energy, s.entropy_functional, s.dissipation_V, s.theta_mean,
                          s.v_mean,  s.min_v,        s.max_v,              s.min_theta,     s.max_theta,
                          s.int_vx2, s.int_ux2,      s.int_thetax2,        s.momentum,      s.Y,
                          s.F,       s.energy_residual, s.h1_v,            s.h1_u,          s.h1_theta};
    for (std::size_t k = 0; k < std::size(row); ++k) out << (k ? "," : "") << format_number(row[k]);
    out << '\n';
  }
}

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return columns[k];
  }
  throw InputError("column '" + name + "' not found");
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      table.header.push_back(cell);
    }
  }
  table.columns.resize(table.header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= table.header.size()) throw InputError("row " + std::to_string(row) + " has too many cells");
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw InputError("row " + std::to_string(row) + ", column '" + table.header[k] + "': not a number: '" + cell +
                         "'");
      }
      table.columns[k++].push_back(x);
    }
    if (k != table.header.size()) throw InputError("row " + std::to_string(row) + " has too few cells");
  }
  return table;
}

std::string summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["status"] = to_string(s.status);
  j["message"] = s.message;
  j["final_time"] = s.final_time;
  j["steps"] = s.steps;
  j["final_min_v"] = s.final_min_v;
  j["final_max_v"] = s.final_max_v;
  j["final_min_theta"] = s.final_min_theta;
  j["final_max_theta"] = s.final_max_theta;
  j["observed_min_v"] = s.observed_min_v;
  j["observed_max_v"] = s.observed_max_v;
  j["observed_min_theta"] = s.observed_min_theta;
  j["observed_max_theta"] = s.observed_max_theta;
  j["final_v_mean"] = s.final_v_mean;
  j["final_theta_mean"] = s.final_theta_mean;
  if (s.stationary) {
    const auto& st = *s.stationary;
    j["v_hat"] = st.v_hat;
    j["theta_hat"] = st.theta_hat;
    j["P_bar"] = st.P_bar;
    j["P_bar_estimated"] = st.P_bar_estimated;
    j["stationary_initial_energy"] = st.initial_energy;
    j["stationary_correction"] = st.correction;
    j["stationary_tail_bound"] = number_or_null(st.tail_bound);
    j["v_uncertainty"] = number_or_null(st.v_uncertainty);
    j["theta_uncertainty"] = number_or_null(st.theta_uncertainty);
    j["insufficient_horizon"] = st.insufficient_horizon;
  } else {
    for (const char* key : {"v_hat", "theta_hat", "P_bar", "P_bar_estimated", "stationary_initial_energy",
                            "stationary_correction", "stationary_tail_bound", "v_uncertainty", "theta_uncertainty",
                            "insufficient_horizon"}) {
      j[key] = nullptr;
    }
  }
  j["stationary_note"] = s.stationary_note;
  j["h1_v"] = number_or_null(s.h1_v);
  j["h1_u"] = number_or_null(s.h1_u);
  j["h1_theta"] = number_or_null(s.h1_theta);
  put_fit(j, "int_u2", s.decay_int_u2);
  put_fit(j, "int_ux2", s.decay_int_ux2);
  put_fit(j, "int_thetax2", s.decay_int_thetax2);
  put_fit(j, "h1_v", s.decay_h1_v);
  put_fit(j, "h1_theta", s.decay_h1_theta);
  j["jensen_passed"] = s.jensen.passed;
  j["jensen_margin"] = number_or_null(s.jensen.worst_margin);
  j["jensen_worst_time"] = s.jensen.worst_time;
  j["jensen_C0"] = s.jensen.final_C0;
  j["jensen_violations"] = s.jensen.violations;
  j["peak_energy_residual"] = s.peak_energy_residual;
  j["max_momentum_drift"] = s.max_momentum_drift;
  j["initial_stress_mismatch"] = s.initial_stress_mismatch;
  j["u0_integral"] = s.u0_integral;
  return j.dump(2) + "\n";
}

std::string version_stamp() {
#ifdef OUTERPRESS_VERSION
  return std::string("outerpress ") + OUTERPRESS_VERSION + "\n";
#else
  return "outerpress unknown\n";
#endif
}

void write_artifacts(const std::filesystem::path& dir, const RunConfig& config, const RunOutcome& outcome) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / kSeriesFile);
    write_series_csv(out, outcome.result.series);
  }
  open_output(dir / kSummaryFile) << summary_json(outcome.summary);
  open_output(dir / kConfigFile) << config.source;
  open_output(dir / kVersionFile) << version_stamp();
  open_output(dir / kTimingFile) << "wall_clock_seconds = " << format_number(outcome.summary.wall_clock_seconds)
                                 << "\n";
  {
    const FluidState& fin = outcome.result.final_state;
    const MassGrid grid = fin.grid();
    auto out = open_output(dir / kFinalStateFile);
    out << "kind,index,x,v,u,theta\n";
    for (std::size_t j = 0; j < grid.n_cells(); ++j) {
      out << "cell," << j << ',' << format_number(grid.cell_center(j)) << ',' << format_number(fin.v[j]) << ",,"
          << format_number(fin.theta[j]) << '\n';
    }
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
      out << "node," << i << ',' << format_number(grid.node(i)) << ",," << format_number(fin.u[i]) << ",\n";
    }
  }
  if (config.write_snapshots) {
    const auto& history = outcome.result.history;
    const MassGrid grid = history.initial.grid();
    auto cells = open_output(dir / kSnapshotCellsFile);
    auto nodes = open_output(dir / kSnapshotNodesFile);
    cells << "t,j,x,v,theta\n";
    nodes << "t,i,x,u\n";
    for (const auto& snap : history.snapshots) {
      const std::string t = format_number(snap.t);
      for (std::size_t j = 0; j < grid.n_cells(); ++j) {
        cells << t << ',' << j << ',' << format_number(grid.cell_center(j)) << ',' << format_number(snap.v[j]) << ','
              << format_number(snap.theta[j]) << '\n';
      }
      for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        nodes << t << ',' << i << ',' << format_number(grid.node(i)) << ',' << format_number(snap.u[i]) << '\n';
      }
    }
  }
}

}  // namespace outerpress::harness
