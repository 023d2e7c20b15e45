#pragma once

#include <stdexcept>

namespace wavebound {

// Physical parameters shared by every routine: gravity g, constant vorticity
// omega (positive by convention; the flow is unidirectional), and the relative
// mass flux m between bed and surface. All three must be strictly positive.
struct FluidParams {
  double g = 9.81;
  double omega = 1.0;
  double m = 1.0;

  void validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("FluidParams: g must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("FluidParams: omega must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("FluidParams: m must be positive");
  }
};

}  // namespace wavebound
