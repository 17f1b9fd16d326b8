#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "outerpress/diagnostics.hpp"
#include "outerpress/harness/runner.hpp"

namespace outerpress::harness {

// Fixed column order of series.csv.
const std::vector<std::string>& series_columns();

void write_series_csv(std::ostream& out, std::span<const DiagnosticsSample> series);

// Columns of a CSV with a header row and numeric cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  // Throws InputError naming the missing column.
  const std::vector<double>& column(const std::string& name) const;
};

// Throws InputError on ragged rows or non-numeric cells.
Table read_csv(const std::filesystem::path& path);

// Flat JSON object, keys sorted; no wall-clock fields so reruns are byte-identical.
std::string summary_json(const RunSummary& summary);

// Artifact file names inside a run directory.
inline constexpr const char* kSeriesFile = "series.csv";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kConfigFile = "config.txt";
inline constexpr const char* kVersionFile = "version.txt";
inline constexpr const char* kTimingFile = "timing.txt";
inline constexpr const char* kFinalStateFile = "final_state.csv";
inline constexpr const char* kSnapshotCellsFile = "snapshots_cells.csv";
inline constexpr const char* kSnapshotNodesFile = "snapshots_nodes.csv";

std::string version_stamp();

// Writes series, summary, config copy, version stamp, final state, timing, and snapshots when
// requested. Creates the directory.
void write_artifacts(const std::filesystem::path& dir, const RunConfig& config, const RunOutcome& outcome);

}  // namespace outerpress::harness
