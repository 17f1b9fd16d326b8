#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace outerpress::harness {

// Named scenarios stored as config text so they go through the same parser as user files.
//   equilibrium          uniform rest state under constant pressure 1
//   standard-beta0.5/1/2 perturbed volume, exponential pressure relaxation 2 -> 1
//   standard-constant    perturbed volume, constant pressure 1
//   contrast-beta0       standard scenario with constant conductivity (outside the theorem regime)
std::vector<std::string> preset_names();

std::optional<std::string> preset_text(std::string_view name);

}  // namespace outerpress::harness
