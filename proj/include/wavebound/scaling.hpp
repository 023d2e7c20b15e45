#pragma once

#include <optional>

#include <wavebound/fluid_params.hpp>
#include <wavebound/height_field.hpp>

namespace wavebound {

// Nondimensional form of the problem: lengths scale by lambda = sqrt(omega/m),
// the stream function by 1/m, and heads by 1/(m*omega). The rescaled problem
// has unit vorticity, unit flux, and gravity epsilon = g/(m^{1/2} omega^{3/2}).
struct NondimParams {
  double epsilon = 0.0;
  double lambda = 0.0;
  std::optional<double> Q_tilde;  // present iff a dimensional head was supplied
};

NondimParams nondimensionalize(const FluidParams& fp);
NondimParams nondimensionalize(const FluidParams& fp, double Q);

// Depth of the nondimensional laminar flow: s_tilde - sqrt(s_tilde^2 - 2),
// decreasing from sqrt(2) at s_tilde = sqrt(2) to 0. Radicand within
// 1e-14*s^2 of zero is clamped; below that throws BelowCriticalError.
double d_tilde_of_s(double s_tilde);

// Inverse map d/2 + 1/d on (0, sqrt(2)); domain error outside.
double s_of_d_tilde(double d_tilde);

// Nondimensional Bernoulli head of the laminar flow at depth d in (0, sqrt(2)]:
// d^2/8 + 1/(2 d^2) - 1/2 + epsilon*d. At d = sqrt(2) this equals
// epsilon*sqrt(2), the head of the deepest flow.
double Q_tilde_of_d(double d_tilde, double epsilon);

// Rescale a wave to the unit-vorticity unit-flux problem (params become
// g = epsilon, omega = 1, m = 1). Grids map node-by-node, so composing with
// map_wave_from_nondim is the identity up to one rounding per entry.
WaveField map_wave_to_nondim(const WaveField& wave, const FluidParams& fp);

// Inverse of map_wave_to_nondim with the original dimensional parameters.
WaveField map_wave_from_nondim(const WaveField& scaled, const FluidParams& fp);

}  // namespace wavebound
