#pragma once

#include <stdexcept>
#include <string>

namespace magweyl {

// Bad arguments: dimension mismatches, mixed grids, mismatched hbar/gauge.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad configuration: unknown families, budget overruns, odd grid sizes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative procedure failed to converge; message carries diagnostics.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid cannot resolve the requested operation; names the minimal grid size.
struct ResolutionError : std::runtime_error {
  ResolutionError(const std::string& msg, int minimal_m)
      : std::runtime_error(msg), minimal_points_per_axis(minimal_m) {}
  int minimal_points_per_axis;
};

// Phase-space window too small for the requested tail-mass budget.
struct WindowError : std::runtime_error {
  WindowError(const std::string& msg, double required_half_width)
      : std::runtime_error(msg), required_half_width(required_half_width) {}
  double required_half_width;
};

// Construction point too close to the grid boundary.
struct DomainMarginError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace magweyl
