#pragma once

#include <stdexcept>
#include <string>

namespace voxnav {

/// World/task generation failed (unsatisfiable tileset, placement rejection
/// budget exhausted, connectivity retries exhausted, ...). CLI exit code 2.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No path exists at any feasible posture. CLI exit code 2.
struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad config file or CLI arguments. CLI exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace voxnav
