#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "outerpress/errors.hpp"
#include "outerpress/initial_data.hpp"
#include "outerpress/model.hpp"
#include "outerpress/schedule.hpp"
#include "outerpress/solver.hpp"

namespace outerpress::harness {

// Invalid configuration. line() is 0 when the problem is not tied to a line (or comes from a preset).
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct RunConfig {
  std::string preset;  // empty when built from keys alone
  std::size_t n_cells = 256;
  SolverConfig solver;  // solver.store_history_every doubles as the output sample stride
  ThermoParams params;
  PressureSchedule schedule = PressureSchedule::constant(1.0);
  InitialData initial = ConstantInit{};
  bool write_snapshots = false;
  double stationary_tolerance = 1e-8;
  // Text the config was parsed from (preset body first when one was named).
  std::string source;
};

// Flat "key = value" text; '#' starts a comment. A "preset = NAME" line loads that preset
// first, wherever it appears, and every other key overrides it. Throws ConfigError.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

// The same config rebuilt from a preset name alone.
RunConfig preset_config(std::string_view name);

}  // namespace outerpress::harness
