#pragma once

#include <optional>
#include <string>
#include <vector>

#include <wavebound/fluid_params.hpp>
#include <wavebound/height_field.hpp>
#include <wavebound/solver.hpp>

namespace wavebound {

enum class CheckStatus { Pass, Fail, Vacuous };

char check_letter(CheckStatus s);

struct InequalityCheck {
  std::string name;
  CheckStatus status = CheckStatus::Vacuous;
  std::optional<double> margin;  // absent when the quantity itself is undefined
  double scale = 1.0;            // reference magnitude the margin is judged against
};

// Result of checking one computed wave against the amplitude bound and the
// conjugate-depth inequalities. Margins are signed; a check passes when its
// margin exceeds -1e-9 * scale. Stream (flat) waves only face the amplitude
// bound; the remaining checks are vacuous for them.
struct BoundCertificate {
  FluidParams params;
  double L = 0.0;
  double lambda = 0.0;   // sqrt(omega / m)
  double epsilon = 0.0;  // g / (sqrt(m) * omega^{3/2})

  double amplitude = 0.0;  // sup eta - inf eta, crest-to-trough
  double theorem_bound = 0.0;
  double refined_bound = 0.0;

  double Q = 0.0;
  double Qc = 0.0;
  double Q0 = 0.0;
  double d0 = 0.0;
  std::optional<double> d_minus;
  std::optional<double> d_plus;
  double inf_eta = 0.0;
  double sup_eta = 0.0;

  bool is_stream = false;

  // Order: amplitude, window, inf_eta >= d_minus, sup_eta >= d_plus,
  // sup_eta <= d0.
  std::vector<InequalityCheck> checks;

  // Same margins computed on the rescaled copy of the wave (unit flux, unit
  // vorticity, gravity epsilon); lengths carry a factor lambda, heads a
  // factor 1/(m*omega) relative to the dimensional margins.
  std::vector<std::optional<double>> nondim_margins;

  ResidualNorms stored_residuals;      // metadata carried by the wave
  ResidualNorms recomputed_residuals;  // re-evaluated here, reported only

  bool all_pass = false;

  std::string flags() const;  // one letter per check, e.g. "PPPPP"
};

// Validates and certifies one converged wave. Throws ConvergenceError if the
// wave is not marked converged or its stored residuals exceed the solver
// acceptance thresholds; throws std::invalid_argument if params disagree with
// the wave's own.
BoundCertificate certify_wave(const WaveField& wave, const FluidParams& params);

struct SweepRow {
  double omega = 0.0;
  double g = 0.0;
  double m = 0.0;
  bool ok = false;
  std::string error;  // empty when ok

  double L = 0.0;
  double amplitude = 0.0;
  double theorem_bound = 0.0;
  double refined_bound = 0.0;
  double Q = 0.0;
  double Qc = 0.0;
  double Q0 = 0.0;
  std::optional<double> d_minus;
  std::optional<double> d_plus;
  double d0 = 0.0;
  double inf_eta = 0.0;
  double sup_eta = 0.0;
  std::string flags;  // per-check letters, or "error"

  bool reached_target = false;
  std::string stop_reason;
  int continuation_steps = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  int succeeded() const;
};

struct SweepOptions {
  // Target crest-to-trough height as a fraction of the still depth d0.
  double target_d0_fraction = 0.012;
  // Where to place the laminar base inside (s0, sc) when picking L. Rows
  // whose amplitude ceiling t(s)^2/2g would sit too close to the target are
  // moved further up the window, where the ceiling is higher.
  double window_fraction = 0.5;
  SolverOptions solver;
};

// Runs the solve + certify pipeline once per vorticity value. Per-row solver
// failures are recorded in the row and the sweep continues.
SweepTable sweep_vorticity(const std::vector<double>& omegas, const FluidParams& base,
                           const SweepOptions& opts = SweepOptions{});

struct DecayReport {
  int n_rows = 0;
  double theorem_slope = 0.0;   // slope of log(bound) vs log(omega)
  double amplitude_slope = 0.0;
  double amplitude_stderr = 0.0;
  double refined_slope = 0.0;
};

// Least-squares log-log slopes across a sweep. Requires at least four
// successful rows. The theorem-bound slope must equal -2 to near machine
// precision; the other slopes are reported without assertion.
DecayReport compare_decay_rates(const SweepTable& table);

}  // namespace wavebound
