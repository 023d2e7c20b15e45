#include <wavebound/scaling.hpp>

#include <cmath>
#include <string>

#include <wavebound/errors.hpp>

namespace wavebound {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Slack absorbing rounding when callers pass sqrt(2) computed elsewhere.
constexpr double kEndpointSlack = 1e-12;

}  // namespace

NondimParams nondimensionalize(const FluidParams& fp) {
  fp.validate();
  NondimParams nd;
  nd.lambda = std::sqrt(fp.omega / fp.m);
  nd.epsilon = fp.g / (std::sqrt(fp.m) * fp.omega * std::sqrt(fp.omega));
  return nd;
}

NondimParams nondimensionalize(const FluidParams& fp, double Q) {
  NondimParams nd = nondimensionalize(fp);
  nd.Q_tilde = Q / (fp.m * fp.omega);
  return nd;
}

double d_tilde_of_s(double s_tilde) {
  double rad = s_tilde * s_tilde - 2.0;
  if (rad < 0.0) {
    if (rad > -1e-14 * s_tilde * s_tilde)
      rad = 0.0;
    else
      throw BelowCriticalError("d_tilde_of_s: s_tilde = " + std::to_string(s_tilde) +
                               " is below sqrt(2)");
  }
  return s_tilde - std::sqrt(rad);
}

double s_of_d_tilde(double d_tilde) {
  if (!(d_tilde > 0.0) || d_tilde > kSqrt2 * (1.0 + kEndpointSlack))
    throw std::domain_error("s_of_d_tilde: d_tilde = " + std::to_string(d_tilde) +
                            " outside (0, sqrt(2)]");
  return 0.5 * d_tilde + 1.0 / d_tilde;
}

double Q_tilde_of_d(double d_tilde, double epsilon) {
  if (!(d_tilde > 0.0) || d_tilde > kSqrt2 * (1.0 + kEndpointSlack))
    throw std::domain_error("Q_tilde_of_d: d_tilde = " + std::to_string(d_tilde) +
                            " outside (0, sqrt(2)]");
  return 0.125 * d_tilde * d_tilde + 0.5 / (d_tilde * d_tilde) - 0.5 + epsilon * d_tilde;
}

namespace {

// Shared core: scale all lengths by c_len, heads by c_head, the parameter by
// c_s, and the interior residual by c_res (the chain-rule factor of the
// height equation under the scaling).
WaveField scale_wave(const WaveField& w, const FluidParams& new_params, double c_len,
                     double c_head, double c_s, double c_res) {
  WaveField out = w;
  out.height.params = new_params;
  out.height.L = c_len * w.height.L;
  out.height.Q = c_head * w.height.Q;
  out.height.s_ref = c_s * w.height.s_ref;
  out.height.d_ref = c_len * w.height.d_ref;
  for (double& v : out.height.h) v *= c_len;
  out.residuals.interior = c_res * w.residuals.interior;
  out.residuals.surface = c_head * w.residuals.surface;
  return out;
}

}  // namespace

WaveField map_wave_to_nondim(const WaveField& wave, const FluidParams& fp) {
  NondimParams nd = nondimensionalize(fp);
  FluidParams scaled{nd.epsilon, 1.0, 1.0};
  double s_scale = 1.0 / std::sqrt(fp.m * fp.omega);
  double res_scale = nd.lambda * fp.m * fp.m;
  return scale_wave(wave, scaled, nd.lambda, 1.0 / (fp.m * fp.omega), s_scale, res_scale);
}

WaveField map_wave_from_nondim(const WaveField& scaled, const FluidParams& fp) {
  NondimParams nd = nondimensionalize(fp);
  double s_scale = std::sqrt(fp.m * fp.omega);
  double res_scale = 1.0 / (nd.lambda * fp.m * fp.m);
  return scale_wave(scaled, fp, 1.0 / nd.lambda, fp.m * fp.omega, s_scale, res_scale);
}

}  // namespace wavebound
