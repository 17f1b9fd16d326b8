#include "outerpress/harness/presets.hpp"

#include <array>
#include <utility>

namespace outerpress::harness {

namespace {

constexpr const char* kEquilibrium = R"(grid.n = 64
time.dt = 1e-3
time.t_end = 10
output.stride = 100
params.beta = 1
schedule.kind = constant
schedule.p_bar = 1
initial.kind = constant
initial.v0 = 1
initial.u0 = 0
initial.theta0 = 1
)";

#define OUTERPRESS_STANDARD_BODY(BETA, SCHEDULE) \
  "grid.n = 256\n"                               \
  "time.dt = 1e-3\n"                             \
  "time.t_end = 200\n"                           \
  "output.stride = 100\n"                        \
  "params.beta = " BETA "\n" SCHEDULE            \
  "initial.kind = sine\n"                        \
  "initial.v0 = 1\n"                             \
  "initial.amplitude = 0.1\n"                    \
  "initial.wavenumber = 1\n"                     \
  "initial.u0 = 0\n"                             \
  "initial.theta0 = 1\n"

#define OUTERPRESS_EXPONENTIAL \
  "schedule.kind = exponential\nschedule.p0 = 2\nschedule.p_bar = 1\nschedule.rate = 1\n"
#define OUTERPRESS_CONSTANT "schedule.kind = constant\nschedule.p_bar = 1\n"

constexpr std::array<std::pair<const char*, const char*>, 6> kPresets = {{
    {"equilibrium", kEquilibrium},
    {"standard-beta0.5", OUTERPRESS_STANDARD_BODY("0.5", OUTERPRESS_EXPONENTIAL)},
    {"standard-beta1", OUTERPRESS_STANDARD_BODY("1", OUTERPRESS_EXPONENTIAL)},
    {"standard-beta2", OUTERPRESS_STANDARD_BODY("2", OUTERPRESS_EXPONENTIAL)},
    {"standard-constant", OUTERPRESS_STANDARD_BODY("1", OUTERPRESS_CONSTANT)},
    {"contrast-beta0", OUTERPRESS_STANDARD_BODY("0", OUTERPRESS_EXPONENTIAL)},
}};

#undef OUTERPRESS_STANDARD_BODY
#undef OUTERPRESS_EXPONENTIAL
#undef OUTERPRESS_CONSTANT

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, body] : kPresets) names.emplace_back(name);
  return names;
}

std::optional<std::string> preset_text(std::string_view name) {
  for (const auto& [preset, body] : kPresets) {
    if (name == preset) return std::string(body);
  }
  return std::nullopt;
}

}  // namespace outerpress::harness
