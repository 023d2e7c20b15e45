#include <wavebound/certify.hpp>

#include <cmath>
#include <stdexcept>

#include <wavebound/amplitude_bounds.hpp>
#include <wavebound/errors.hpp>
#include <wavebound/stream_flows.hpp>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace wavebound;

namespace {

WaveField solved_unit_wave() {
  FluidParams unit;
  unit.g = 1.0;
  return solve_periodic(unit, 1.966123061513253, 0.008);
}

}  // namespace

TEST_CASE("certificate of a computed wave") {
  FluidParams unit;
  unit.g = 1.0;
  WaveField wave = solved_unit_wave();
  BoundCertificate cert = certify_wave(wave, unit);

  CHECK(cert.all_pass);
  CHECK(cert.flags() == "PPPPP");
  CHECK(!cert.is_stream);
  REQUIRE(cert.checks.size() == 5);
  for (const InequalityCheck& c : cert.checks) {
    CHECK(c.status == CheckStatus::Pass);
    REQUIRE(c.margin.has_value());
    CHECK(*c.margin > -1e-9 * c.scale);
  }
  CHECK(check_letter(CheckStatus::Pass) == 'P');
  CHECK(check_letter(CheckStatus::Fail) == 'F');
  CHECK(check_letter(CheckStatus::Vacuous) == 'V');

  // extrema and bounds are mutually consistent
  CHECK(cert.amplitude == doctest::Approx(cert.sup_eta - cert.inf_eta).epsilon(1e-12));
  CHECK(cert.amplitude >= 2.0 * 0.008 - 1e-10);  // crest-to-trough of the pinned wave
  CHECK(cert.theorem_bound == theorem_bound(unit));
  CHECK(cert.refined_bound < cert.theorem_bound);
  CHECK(*cert.checks[0].margin ==
        doctest::Approx(cert.theorem_bound - cert.amplitude).epsilon(1e-12));

  // conjugate depths bracket the surface
  REQUIRE(cert.d_minus.has_value());
  REQUIRE(cert.d_plus.has_value());
  CHECK(cert.Qc < cert.Q);
  CHECK(cert.Q < cert.Q0);
  CHECK(*cert.d_minus < cert.inf_eta);
  CHECK(*cert.d_plus < cert.sup_eta);
  CHECK(cert.sup_eta < cert.d0);

  // nondimensional margins are the dimensional ones in rescaled units
  double lambda = cert.lambda;
  REQUIRE(cert.nondim_margins.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) REQUIRE(cert.nondim_margins[k].has_value());
  CHECK(*cert.nondim_margins[0] ==
        doctest::Approx(*cert.checks[0].margin * lambda).epsilon(1e-9));
  CHECK(*cert.nondim_margins[1] ==
        doctest::Approx(*cert.checks[1].margin / (unit.m * unit.omega)).epsilon(1e-9));
  for (std::size_t k = 2; k < 5; ++k)
    CHECK(*cert.nondim_margins[k] ==
          doctest::Approx(*cert.checks[k].margin * lambda).epsilon(1e-9));

  CHECK(cert.stored_residuals.interior == wave.residuals.interior);
  CHECK(cert.recomputed_residuals.interior <= 1e-10);
}

TEST_CASE("stream waves face only the amplitude check") {
  FluidParams fp;
  fp.g = 2.0;
  fp.omega = 1.3;
  fp.m = 0.7;
  StreamWindow w = stream_window(fp);
  double L = wavelength_at(fp, w.s0 + 0.5 * (w.sc - w.s0));
  BranchResult br = continue_branch(fp, L, 0.0);
  BoundCertificate cert = certify_wave(br.wave, fp);
  CHECK(cert.is_stream);
  CHECK(cert.flags() == "PVVVV");
  CHECK(cert.all_pass);
  CHECK(cert.amplitude <= 1e-12);
  CHECK(cert.checks[0].status == CheckStatus::Pass);
  for (int k = 1; k < 5; ++k) CHECK(cert.checks[k].status == CheckStatus::Vacuous);
}

TEST_CASE("certification refuses unconverged or mismatched input") {
  FluidParams unit;
  unit.g = 1.0;
  WaveField wave = solved_unit_wave();

  WaveField bad = wave;
  bad.converged = false;
  CHECK_THROWS_AS(certify_wave(bad, unit), ConvergenceError);

  WaveField noisy = wave;
  noisy.residuals.interior = 1e-6;  // stored metadata above the acceptance gate
  CHECK_THROWS_AS(certify_wave(noisy, unit), ConvergenceError);

  FluidParams other = unit;
  other.m = 2.0;
  CHECK_THROWS_AS(certify_wave(wave, other), std::invalid_argument);
}

TEST_CASE("an inflated profile fails exactly the depth ceiling") {
  FluidParams unit;
  unit.g = 1.0;
  WaveField wave = solved_unit_wave();
  StreamWindow w = stream_window(unit);

  // scale every column above the deepest laminar depth, keeping metadata;
  // the wave is no longer a solution but certification judges the stored
  // numbers, so exactly one inequality should break
  WaveField fake = wave;
  double factor = 1.2 * w.d0 / wave.height.d_ref;
  for (int i = 0; i < fake.height.n_x; ++i) {
    double wobble = factor * (1.0 + 0.05 * std::cos(2.0 * M_PI * i / fake.height.n_x));
    for (int j = 0; j <= fake.height.n_p; ++j) fake.height.at(i, j) *= wobble;
  }
  BoundCertificate cert = certify_wave(fake, unit);
  CHECK(!cert.all_pass);
  CHECK(cert.flags() == "PPPPF");
  CHECK(cert.sup_eta > cert.d0);
}

TEST_CASE("vorticity sweep fills rows and slope report") {
  FluidParams base;
  base.g = 1.0;
  SweepOptions opts;
  opts.target_d0_fraction = 0.008;
  SweepTable table = sweep_vorticity({0.5, 1.0}, base, opts);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.succeeded() == 2);
  for (const SweepRow& row : table.rows) {
    CHECK(row.ok);
    CHECK(row.flags == "PPPPP");
    CHECK(row.reached_target);
    CHECK(row.amplitude == doctest::Approx(0.008 * row.d0).epsilon(1e-6));
    CHECK(row.amplitude < row.theorem_bound);
    CHECK(row.refined_bound < row.theorem_bound);
    CHECK(row.continuation_steps > 0);
    CHECK(row.d_minus.has_value());
    CHECK(row.inf_eta > *row.d_minus);
  }
  CHECK(table.rows[0].omega == 0.5);
  CHECK(table.rows[1].omega == 1.0);

  CHECK_THROWS_AS(sweep_vorticity({}, base), std::invalid_argument);
  CHECK_THROWS_AS(sweep_vorticity({-1.0}, base), std::invalid_argument);
}

TEST_CASE("decay slopes across a synthetic table") {
  // four clean rows with the exact 2g/omega^2 column and a power-law
  // amplitude column: slopes must come out exactly and the report must
  // refuse a corrupted bound column
  SweepTable table;
  for (double om : {1.0, 2.0, 4.0, 8.0}) {
    SweepRow row;
    row.omega = om;
    row.g = 1.0;
    row.m = 1.0;
    row.ok = true;
    row.theorem_bound = 2.0 / (om * om);
    row.amplitude = 0.01 / std::sqrt(om);
    row.refined_bound = 0.8 / om;
    table.rows.push_back(row);
  }
  DecayReport rep = compare_decay_rates(table);
  CHECK(rep.n_rows == 4);
  CHECK(std::abs(rep.theorem_slope + 2.0) <= 1e-12);
  CHECK(rep.amplitude_slope == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(rep.amplitude_stderr <= 1e-10);
  CHECK(rep.refined_slope == doctest::Approx(-1.0).epsilon(1e-10));

  SweepTable corrupt = table;
  corrupt.rows[2].theorem_bound *= 1.05;
  CHECK_THROWS_AS(compare_decay_rates(corrupt), std::logic_error);

  SweepTable small;
  small.rows.assign(table.rows.begin(), table.rows.begin() + 2);
  CHECK_THROWS_AS(compare_decay_rates(small), std::invalid_argument);
}
