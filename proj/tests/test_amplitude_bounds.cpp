#include <wavebound/amplitude_bounds.hpp>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include <wavebound/scaling.hpp>
#include <wavebound/stream_flows.hpp>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace wavebound;

TEST_CASE("crude bound is 2g/omega^2 and scales exactly") {
  FluidParams fp;
  fp.g = 9.81;
  fp.omega = 1.0;
  CHECK(theorem_bound(fp) == 19.62);
  fp.omega = 2.0;
  CHECK(theorem_bound(fp) == 19.62 / 4.0);
  fp.omega = 4.0;
  CHECK(theorem_bound(fp) == 19.62 / 16.0);  // halving omega in binary: exact /4 steps
}

TEST_CASE("delta root at a frozen epsilon") {
  double d = delta_root(0.1);
  CHECK(d == doctest::Approx(0.17455565593283177).epsilon(1e-12));
  CHECK(d > 0.0);
  CHECK(d < 0.2);

  // independent bisection of the head equation on (0, 2*eps)
  auto f = [](double delta) {
    return Q_tilde_of_d(std::sqrt(2.0) - delta, 0.1) - 0.1 * std::sqrt(2.0);
  };
  double db = oracle::bisect_plain(f, 1e-8, 0.2);
  CHECK(std::abs(d - db) <= 1e-10);
}

TEST_CASE("delta root stays inside (0, 2*epsilon)") {
  for (int trial = 0; trial < 12; ++trial) {
    double eps = oracle::uniform(0.01, std::sqrt(2.0) / 2.0 - 0.01);
    double d = delta_root(eps);
    CHECK(d > 0.0);
    CHECK(d < 2.0 * eps);
  }
  CHECK_THROWS_AS(delta_root(1.0), std::domain_error);
  CHECK_THROWS_AS(delta_root(0.0), std::domain_error);
}

TEST_CASE("delta root matches the shallow conjugate of the deepest flow") {
  // Q_tilde(sqrt(2)-delta*) equals the head Q0 of the deepest flow, so
  // sqrt(2)-delta* is the d_minus limit of depth_pair as q -> Q0.
  double eps = 0.1;
  FluidParams fp;
  fp.g = eps;
  StreamWindow w = stream_window(fp);
  DepthPair pr = depth_pair(w.Q0 * (1.0 - 1e-12), fp);
  CHECK(std::abs((std::sqrt(2.0) - delta_root(eps)) - pr.d_minus) <= 1e-10);
}

TEST_CASE("refined bound on the small-epsilon branch") {
  FluidParams fp;
  fp.g = 0.1;
  AmplitudeBound b = refined_bound(fp);
  CHECK(b.branch == EpsilonBranch::Small);
  CHECK(std::strcmp(to_string(b.branch), "small-epsilon") == 0);
  CHECK(b.epsilon == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(b.d_tilde_1 == doctest::Approx(1.23965790644026328).epsilon(1e-12));
  CHECK(b.theorem_bound == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(b.refined_bound < b.theorem_bound);
  CHECK(b.refined_bound ==
        doctest::Approx(std::sqrt(2.0) - 1.23965790644026328).epsilon(1e-11));
}

TEST_CASE("refined bound on the large-epsilon branch") {
  FluidParams unit;
  unit.g = 1.0;
  AmplitudeBound b = refined_bound(unit);
  CHECK(b.branch == EpsilonBranch::Large);
  CHECK(std::strcmp(to_string(b.branch), "large-epsilon") == 0);
  CHECK(b.epsilon == 1.0);
  CHECK(b.d_tilde_1 == doctest::Approx(0.63913225552336814).epsilon(1e-12));
  CHECK(b.refined_bound == doctest::Approx(0.77508130684972691).epsilon(1e-12));
  CHECK(b.theorem_bound == 2.0);
  CHECK(b.refined_bound < b.theorem_bound);
}

TEST_CASE("refined bound is below the crude bound across parameters") {
  for (int trial = 0; trial < 15; ++trial) {
    FluidParams fp;
    fp.g = oracle::uniform(0.3, 15.0);
    fp.omega = oracle::uniform(0.2, 6.0);
    fp.m = oracle::uniform(0.3, 4.0);
    AmplitudeBound b = refined_bound(fp);
    CHECK(b.refined_bound > 0.0);
    CHECK(b.refined_bound < b.theorem_bound);
    CHECK(b.d_tilde_1 > 0.0);
    CHECK(b.d_tilde_1 < std::sqrt(2.0));
    // the refined depth carries the same head as the deepest flow
    CHECK(std::abs(Q_tilde_of_d(b.d_tilde_1, b.epsilon) - b.epsilon * std::sqrt(2.0)) <=
          1e-10 * (1.0 + b.epsilon));
  }
}

TEST_CASE("three-term head identity and strict remainder") {
  ProofCheckReport rep = proof_inequality_check(0.3, 1000);
  CHECK(rep.n_samples == 1000);
  CHECK(rep.max_identity_error <= 1e-12);
  CHECK(rep.max_violation < 0.0);

  // remainder term at delta = sqrt(2)/2 collapses to exactly 5/16
  double delta = std::sqrt(2.0) / 2.0;
  double rem = delta * delta * delta * (4.0 * std::sqrt(2.0) - 3.0 * delta) /
               (8.0 * (std::sqrt(2.0) - delta) * (std::sqrt(2.0) - delta));
  CHECK(rem == doctest::Approx(0.3125).epsilon(1e-14));

  CHECK_THROWS(proof_inequality_check(0.3, 0));
}
