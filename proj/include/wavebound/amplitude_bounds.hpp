#pragma once

#include <wavebound/fluid_params.hpp>

namespace wavebound {

// Which case of the two-case analysis applies: Small means epsilon < sqrt(2)/2
// (the root delta* of the head equation lies in (0, 2*epsilon)); Large means
// the refined depth is found below the critical depth instead.
enum class EpsilonBranch { Small, Large };

const char* to_string(EpsilonBranch b);

// Explicit amplitude bound together with its sharper companion. The crude
// bound 2g/omega^2 never references the flux; the refined one does, through
// epsilon and the depth d_tilde_1 of the shallow flow conjugate to the
// deepest laminar flow.
struct AmplitudeBound {
  double theorem_bound = 0.0;  // 2g/omega^2
  double refined_bound = 0.0;  // (sqrt(2) - d_tilde_1)/lambda, strictly smaller
  double epsilon = 0.0;
  double d_tilde_1 = 0.0;      // in (0, sqrt(2))
  EpsilonBranch branch = EpsilonBranch::Small;
};

// Crest-to-trough bound 2g/omega^2 for unidirectional waves with positive
// constant vorticity.
double theorem_bound(const FluidParams& fp);

// The unique nonzero root delta* of Q_tilde(sqrt(2)-delta) = epsilon*sqrt(2),
// bracketed by scanning down from 2*epsilon (the trivial root delta = 0 is
// excluded by construction). Requires 0 < epsilon < sqrt(2)/2; otherwise
// throws std::domain_error to signal the large-epsilon branch.
double delta_root(double epsilon);

// Both bounds for the given parameters. In the large-epsilon case d_tilde_1
// solves Q_tilde(d) = epsilon*sqrt(2) below the critical depth directly.
AmplitudeBound refined_bound(const FluidParams& fp);

struct ProofCheckReport {
  int n_samples = 0;
  double max_identity_error = 0.0;  // relative, against the three-term sum
  double max_violation = 0.0;       // max of (-eps*delta + delta^2/2) - lhs; < 0 expected
};

// Samples delta across (0, sqrt(2)) and checks that the head difference
// Q_tilde(sqrt(2)-delta) - epsilon*sqrt(2) equals
//   -eps*delta + delta^2/2 + delta^3(4*sqrt(2)-3*delta)/(8*(sqrt(2)-delta)^2)
// to 1e-12 relative, and strictly exceeds its first two terms. Throws
// std::logic_error if either fails; returns the observed extremes.
ProofCheckReport proof_inequality_check(double epsilon, int n_samples);

}  // namespace wavebound
