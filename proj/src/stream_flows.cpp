#include <wavebound/stream_flows.hpp>

#include <cmath>
#include <string>

#include <wavebound/errors.hpp>
#include <wavebound/root_finding.hpp>

namespace wavebound {

namespace {

// sqrt(s^2 - 2*omega*m) with a clamp for rounding-level negative radicands.
double surface_shear(double s, const FluidParams& fp) {
  double rad = s * s - 2.0 * fp.omega * fp.m;
  if (rad < 0.0) {
    if (rad > -1e-14 * s * s) return 0.0;
    throw BelowCriticalError("surface-speed parameter s = " + std::to_string(s) +
                             " is below sqrt(2*omega*m)");
  }
  return std::sqrt(rad);
}

}  // namespace

double psi_stream(double y, double s, double omega) {
  return (-0.5 * omega * y + s) * y;
}

double depth_of_s(double s, const FluidParams& fp) {
  fp.validate();
  return (s - surface_shear(s, fp)) / fp.omega;
}

double bernoulli_of_s(double s, const FluidParams& fp) {
  fp.validate();
  double t = surface_shear(s, fp);
  return 0.5 * s * s - fp.omega * fp.m + fp.g * (s - t) / fp.omega;
}

double bernoulli_slope(double s, const FluidParams& fp) {
  fp.validate();
  double t = surface_shear(s, fp);
  return s + (fp.g / fp.omega) * (1.0 - s / t);
}

double critical_s(const FluidParams& fp) {
  fp.validate();
  double s0 = std::sqrt(2.0 * fp.omega * fp.m);
  double r = fp.g / fp.omega;
  // W(s) = r*(1/t - 1/s) - 1 decreases from +inf at s0 to -1 at infinity.
  auto W = [&](double s) { return r * (1.0 / surface_shear(s, fp) - 1.0 / s) - 1.0; };
  auto dW = [&](double s) {
    double t = surface_shear(s, fp);
    return r * (-s / (t * t * t) + 1.0 / (s * s));
  };
  double lo = s0 * (1.0 + 1e-13);
  int grow = 0;
  while (W(lo) <= 0.0) {
    lo = s0 * (1.0 + 0.5 * (lo / s0 - 1.0));
    if (++grow > 60) throw ConvergenceError("critical_s: cannot bracket from below");
  }
  double hi = 2.0 * lo;
  grow = 0;
  while (W(hi) >= 0.0) {
    hi *= 2.0;
    if (++grow > 60) throw ConvergenceError("critical_s: cannot bracket from above");
  }
  return find_root(W, dW, lo, hi);
}

StreamWindow stream_window(const FluidParams& fp) {
  fp.validate();
  StreamWindow w;
  w.s0 = std::sqrt(2.0 * fp.omega * fp.m);
  w.d0 = std::sqrt(2.0 * fp.m / fp.omega);
  w.Q0 = fp.g * w.d0;
  w.sc = critical_s(fp);
  w.dc = depth_of_s(w.sc, fp);
  w.Qc = bernoulli_of_s(w.sc, fp);
  return w;
}

DepthPair depth_pair(double q, const FluidParams& fp) {
  return depth_pair(q, fp, stream_window(fp));
}

DepthPair depth_pair(double q, const FluidParams& fp, const StreamWindow& w) {
  fp.validate();
  if (!(q > w.Qc) || !(q < w.Q0))
    throw OutOfWindowError("depth_pair: q = " + std::to_string(q) +
                           " outside the window (" + std::to_string(w.Qc) + ", " +
                           std::to_string(w.Q0) + ")");
  DepthPair pair;
  pair.q = q;
  if (q - w.Qc < 1e-13 * w.Q0) {
    pair.s_minus = pair.s_plus = w.sc;
    pair.d_minus = pair.d_plus = w.dc;
    pair.degenerate = true;
    return pair;
  }
  pair.degenerate = false;
  // Work in the depth variable: the head of the depth-d laminar flow is
  // t(d)^2/2 + g*d with surface slip t(d) = m/d - omega*d/2, free of the
  // sqrt cancellation that makes q(s) unresolvable near s0. The deep root
  // approaches d0 linearly in Q0 - q, so the whole window is reachable.
  auto slip = [&](double d) { return fp.m / d - 0.5 * fp.omega * d; };
  auto F = [&](double d) { return 0.5 * slip(d) * slip(d) + fp.g * d - q; };
  auto dF = [&](double d) {
    return fp.g - slip(d) * (fp.m / (d * d) + 0.5 * fp.omega);
  };
  // Deep branch: the head grows from Qc at dc to Q0 at d0.
  pair.d_plus = find_root(F, dF, w.dc, w.d0);
  // Shallow branch: the head falls from +inf toward Qc as d grows to dc.
  double lo = 0.5 * w.dc;
  int grow = 0;
  while (F(lo) <= 0.0) {
    lo *= 0.5;
    if (++grow > 200) throw ConvergenceError("depth_pair: cannot bracket d_minus");
  }
  pair.d_minus = find_root(F, dF, lo, w.dc);
  pair.s_minus = 0.5 * fp.omega * pair.d_plus + fp.m / pair.d_plus;
  pair.s_plus = 0.5 * fp.omega * pair.d_minus + fp.m / pair.d_minus;
  return pair;
}

}  // namespace wavebound
