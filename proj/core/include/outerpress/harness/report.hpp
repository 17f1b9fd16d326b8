#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "outerpress/errors.hpp"

namespace outerpress::harness {

// A run directory lacking required artifacts.
class MissingArtifactsError : public InputError {
 public:
  explicit MissingArtifactsError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// Plain-text verification report for a run directory written by write_artifacts.
std::string render_report(const std::filesystem::path& dir);

}  // namespace outerpress::harness
