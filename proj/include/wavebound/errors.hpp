#pragma once

#include <stdexcept>

namespace wavebound {

// Surface-speed parameter below the minimum admissible for the given mass flux.
struct BelowCriticalError : std::domain_error {
  using std::domain_error::domain_error;
};

// Bernoulli constant outside the open interval where two conjugate flows exist.
struct OutOfWindowError : std::domain_error {
  using std::domain_error::domain_error;
};

// Iteration failed to reach the requested tolerance or to bracket a root.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A height field lost strict monotonicity in the vertical coordinate.
struct MonotonicityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No bifurcation point exists for the requested wavenumber.
struct BifurcationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wavebound
