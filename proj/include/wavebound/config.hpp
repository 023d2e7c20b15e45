#pragma once

#include <string>
#include <vector>

#include <wavebound/certify.hpp>
#include <wavebound/solver.hpp>

namespace wavebound {

// Everything the command-line tool can be told, collected in one place so a
// config file can override any of it. Values here are applied after flag
// parsing, so file entries win over flags.
struct RunConfig {
  double g = 1.0;
  double omega = 1.0;
  double m = 1.0;

  double L = 0.0;          // 0 = pick the mid-window wavelength automatically
  double amplitude = 0.0;  // target half-amplitude for solve

  std::vector<double> omegas;  // sweep list

  int n_x = 64;
  int n_p = 48;
  int max_newton_iter = 25;
  double interior_threshold = 1e-10;
  double surface_threshold = 1e-8;
  double amplitude_step = 0.0;
  int max_continuation_steps = 400;

  double target_d0_fraction = 0.012;
  double window_fraction = 0.5;

  std::string out;
  std::string format = "json";  // sweep output: json or csv

  FluidParams fluid() const;
  SolverOptions solver() const;
  SweepOptions sweep() const;
};

// Applies "key = value" lines from a config file on top of cfg. Blank lines
// and '#' comments are skipped; an unknown key or a malformed value is an
// error (std::invalid_argument). The omegas key takes a comma-separated list.
void apply_config_file(const std::string& path, RunConfig& cfg);

// Same, on in-memory text (the file loader delegates here).
void apply_config_text(const std::string& text, RunConfig& cfg);

}  // namespace wavebound
