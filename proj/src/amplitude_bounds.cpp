#include <wavebound/amplitude_bounds.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <wavebound/errors.hpp>
#include <wavebound/root_finding.hpp>
#include <wavebound/scaling.hpp>

namespace wavebound {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double head_slope(double d, double epsilon) {  // d/dd of Q_tilde_of_d
  return 0.25 * d - 1.0 / (d * d * d) + epsilon;
}

// Depth minimizing the nondimensional head: unique zero of head_slope in
// (0, sqrt(2)); the slope runs from -inf to epsilon > 0.
double critical_depth_tilde(double epsilon) {
  auto f = [&](double d) { return head_slope(d, epsilon); };
  auto df = [&](double d) { return 0.25 + 3.0 / (d * d * d * d); };
  double lo = kSqrt2;
  int guard = 0;
  do {
    lo *= 0.5;
    if (++guard > 200) throw ConvergenceError("critical_depth_tilde: cannot bracket");
  } while (f(lo) >= 0.0);
  return find_root(f, df, lo, kSqrt2);
}

}  // namespace

const char* to_string(EpsilonBranch b) {
  return b == EpsilonBranch::Small ? "small-epsilon" : "large-epsilon";
}

double theorem_bound(const FluidParams& fp) {
  fp.validate();
  return 2.0 * fp.g / (fp.omega * fp.omega);
}

double delta_root(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5 * kSqrt2))
    throw std::domain_error("delta_root: epsilon = " + std::to_string(epsilon) +
                            " outside (0, sqrt(2)/2); use the large-epsilon branch");
  auto f = [&](double delta) {
    return Q_tilde_of_d(kSqrt2 - delta, epsilon) - epsilon * kSqrt2;
  };
  auto df = [&](double delta) { return -head_slope(kSqrt2 - delta, epsilon); };
  // f(2*epsilon) > 0 by the remainder identity; f < 0 near zero since
  // f'(0) = -epsilon. Scan down geometrically to step over the trivial root.
  double hi = 2.0 * epsilon;
  double lo = hi;
  int guard = 0;
  do {
    hi = lo;
    lo *= 0.9;
    if (++guard > 400) throw ConvergenceError("delta_root: cannot bracket the nonzero root");
  } while (f(lo) >= 0.0);
  return find_root(f, df, lo, hi);
}

AmplitudeBound refined_bound(const FluidParams& fp) {
  fp.validate();
  AmplitudeBound b;
  NondimParams nd = nondimensionalize(fp);
  b.epsilon = nd.epsilon;
  b.theorem_bound = theorem_bound(fp);
  if (nd.epsilon < 0.5 * kSqrt2) {
    b.branch = EpsilonBranch::Small;
    b.d_tilde_1 = kSqrt2 - delta_root(nd.epsilon);
  } else {
    b.branch = EpsilonBranch::Large;
    double target = nd.epsilon * kSqrt2;
    auto f = [&](double d) { return Q_tilde_of_d(d, nd.epsilon) - target; };
    auto df = [&](double d) { return head_slope(d, nd.epsilon); };
    double dc = critical_depth_tilde(nd.epsilon);
    double lo = dc;
    int guard = 0;
    do {
      lo *= 0.5;
      if (++guard > 200) throw ConvergenceError("refined_bound: cannot bracket d_tilde_1");
    } while (f(lo) <= 0.0);
    b.d_tilde_1 = find_root(f, df, lo, dc);
  }
  b.refined_bound = (kSqrt2 - b.d_tilde_1) / nd.lambda;
  return b;
}

ProofCheckReport proof_inequality_check(double epsilon, int n_samples) {
  if (!(epsilon > 0.0)) throw std::domain_error("proof_inequality_check: epsilon must be positive");
  if (n_samples < 1) throw std::domain_error("proof_inequality_check: n_samples must be >= 1");
  ProofCheckReport rep;
  rep.n_samples = n_samples;
  rep.max_violation = -HUGE_VAL;
  for (int i = 0; i < n_samples; ++i) {
    double delta = kSqrt2 * (i + 0.5) / n_samples;
    double d = kSqrt2 - delta;
    double lhs = Q_tilde_of_d(d, epsilon) - epsilon * kSqrt2;
    double t1 = -epsilon * delta;
    double t2 = 0.5 * delta * delta;
    double t3 = delta * delta * delta * (4.0 * kSqrt2 - 3.0 * delta) / (8.0 * d * d);
    double scale = -t1 + t2 + t3;  // all magnitudes; t1 < 0 < t2, t3
    double id_err = std::abs(lhs - (t1 + t2 + t3)) / scale;
    if (id_err > rep.max_identity_error) rep.max_identity_error = id_err;
    double violation = (t1 + t2) - lhs;
    if (violation > rep.max_violation) rep.max_violation = violation;
  }
  if (rep.max_identity_error > 1e-12)
    throw std::logic_error("proof_inequality_check: three-term identity failed");
  if (rep.max_violation >= 0.0)
    throw std::logic_error("proof_inequality_check: strict inequality failed");
  return rep;
}

}  // namespace wavebound
