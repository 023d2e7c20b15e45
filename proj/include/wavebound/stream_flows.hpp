#pragma once

#include <wavebound/fluid_params.hpp>

namespace wavebound {

// Landscape of the laminar (x-independent) flows at fixed fluid parameters.
// The admissible surface-speed parameters form the ray s >= s0; the Bernoulli
// head q(s) decreases from Q0 at s0 to its minimum Qc at sc and grows without
// bound afterwards, so every q in (Qc, Q0) is attained by exactly two flows.
struct StreamWindow {
  double s0;  // smallest admissible parameter, sqrt(2*omega*m)
  double d0;  // depth of the s0 flow, the deepest laminar flow
  double Q0;  // Bernoulli head at s0, upper end of the window
  double sc;  // parameter of minimal Bernoulli head
  double dc;  // depth at sc
  double Qc;  // minimal Bernoulli head, lower end of the window
};

// The two laminar flows sharing a Bernoulli head q in (Qc, Q0). Naming follows
// the depths: d_minus < dc < d_plus, so s_minus (the slower surface stream)
// carries the larger depth d_plus.
struct DepthPair {
  double q;
  double s_minus;  // root in (s0, sc)
  double s_plus;   // root in (sc, inf)
  double d_minus;  // depth of the s_plus flow
  double d_plus;   // depth of the s_minus flow
  bool degenerate; // q within rounding distance of Qc; both roots collapse to sc
};

// Laminar stream function Psi(y) = -omega*y^2/2 + s*y.
double psi_stream(double y, double s, double omega);

// Depth d(s) of the laminar flow with surface-speed parameter s: the smaller
// positive root of Psi(d) = m. Throws BelowCriticalError if s^2 < 2*omega*m
// beyond rounding; a radicand within 1e-14*s^2 of zero is clamped.
double depth_of_s(double s, const FluidParams& fp);

// Bernoulli head q(s) = s^2/2 - omega*m + g*d(s) of the laminar flow.
double bernoulli_of_s(double s, const FluidParams& fp);

// dq/ds = s + (g/omega)*(1 - s/sqrt(s^2 - 2*omega*m)). Negative on (s0, sc),
// positive beyond sc. Unbounded as s -> s0+.
double bernoulli_slope(double s, const FluidParams& fp);

// The unique zero sc > s0 of bernoulli_slope, from the equivalent equation
// (g/omega)*(1/sqrt(s^2-2*omega*m) - 1/s) = 1 which avoids cancellation.
double critical_s(const FluidParams& fp);

StreamWindow stream_window(const FluidParams& fp);

// Conjugate pair of laminar flows with Bernoulli head q. Throws
// OutOfWindowError unless Qc < q < Q0; a q within 1e-13*Q0 above Qc returns
// the collapsed pair (sc, sc) with the degenerate flag set.
DepthPair depth_pair(double q, const FluidParams& fp);
DepthPair depth_pair(double q, const FluidParams& fp, const StreamWindow& w);

}  // namespace wavebound
