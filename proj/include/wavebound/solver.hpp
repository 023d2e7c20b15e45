#pragma once

#include <string>
#include <vector>

#include <wavebound/fluid_params.hpp>
#include <wavebound/height_field.hpp>

namespace wavebound {

struct SolverOptions {
  int n_x = 64;
  int n_p = 48;
  int max_newton_iter = 25;
  // Convergence gates on the reported residual norms (omega-normalized
  // interior, surface head defect). Newton itself iterates to its rounding
  // floor.
  double interior_threshold = 1e-10;
  double surface_threshold = 1e-8;
  double amplitude_step = 0.0;        // continuation step; 0 = target/10
  double min_amplitude_step = 0.0;    // halving floor; 0 = target/1e4
  double stagnation_fraction = 0.02;  // stop branch when min psi_y < frac * m/d0
  int max_continuation_steps = 400;
};

// Value of the dispersion function at laminar parameter s and wavenumber k:
// T(s)^2 phi'(d) - g phi(d) where phi solves the linearized height equation
// phi'' - (2 omega / P'(z)) phi' - k^2 phi = 0, phi(0) = 0, by shooting.
// Negative near s0, positive at sc; its zero is the bifurcation point.
double dispersion_value(const FluidParams& fp, double s, double k);

// Laminar parameter s* in (s0, sc) where a 2*pi/L-periodic wave branch
// bifurcates. Throws BifurcationError if no sign change is found.
double bifurcation_point(const FluidParams& fp, double L);

// Wavelength of the branch bifurcating at parameter s in (s0, sc): inverse of
// bifurcation_point, solving dispersion_value(s, k) = 0 for k.
double wavelength_at(const FluidParams& fp, double s);

// Bifurcation point of the discretized problem on an n_x by n_p grid with
// period L: zero of the grid analogue of the dispersion function, obtained by
// marching the fundamental-mode recurrence through the rows of the laminar
// grid. Converges to bifurcation_point(fp, L) under grid refinement but can
// sit elsewhere in (s0, sc) when the mode's surface layer is under-resolved;
// the wave solver seeds its continuation from this value so the predictor
// matches the equations it actually solves.
double discrete_bifurcation(const FluidParams& fp, double L, int n_x, int n_p);

struct BranchResult {
  WaveField wave;                    // last accepted wave
  std::vector<WaveField> steps;      // every accepted continuation step
  double achieved_amplitude = 0.0;   // solver half-amplitude of `wave`
  bool reached_target = false;
  std::string stop_reason;           // empty when reached_target
};

// Continue the periodic branch of wavelength L from the laminar flow up to the
// requested half-amplitude (h(0,m) - h(L/2,m))/2 = amplitude, with fixed-step
// continuation, step halving on Newton failure, and the stagnation stop.
// Unlike solve_periodic this reports early branch termination instead of
// throwing.
BranchResult continue_branch(const FluidParams& fp, double L, double amplitude,
                             const SolverOptions& opts = {});

// One converged wave at the requested half-amplitude. Throws
// ConvergenceError when Newton or the continuation fails or the branch
// terminates first (stagnation), MonotonicityError when the iterate leaves
// the unidirectional regime, BifurcationError when no branch exists at L.
// `init` optionally restarts from an existing field of identical layout.
WaveField solve_periodic(const FluidParams& fp, double L, double amplitude,
                         const SolverOptions& opts = {},
                         const HeightField* init = nullptr);

}  // namespace wavebound
