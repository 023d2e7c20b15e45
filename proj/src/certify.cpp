#include <wavebound/certify.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <wavebound/amplitude_bounds.hpp>
#include <wavebound/errors.hpp>
#include <wavebound/scaling.hpp>
#include <wavebound/stream_flows.hpp>

namespace wavebound {

namespace {

constexpr double kPi = 3.14159265358979323846;

// A check passes when its signed margin exceeds -kMarginTol * scale.
constexpr double kMarginTol = 1e-9;

// Relative slack when a wave counts as a stream (flat) solution.
constexpr double kStreamTol = 1e-12;

struct Extrema {
  double inf = 0.0;
  double sup = 0.0;
};

// Refines a grid extremum by the vertex of the parabola through the node and
// its two periodic neighbours; keeps the node value when the curvature
// vanishes or the vertex escapes the cell.
double refined_vertex(const std::vector<double>& eta, int i, bool want_max) {
  int n = static_cast<int>(eta.size());
  double y0 = eta[static_cast<std::size_t>((i - 1 + n) % n)];
  double y1 = eta[static_cast<std::size_t>(i)];
  double y2 = eta[static_cast<std::size_t>((i + 1) % n)];
  double curv = y0 - 2.0 * y1 + y2;
  if (curv == 0.0) return y1;
  if (want_max && curv > 0.0) return y1;
  if (!want_max && curv < 0.0) return y1;
  double xv = 0.5 * (y0 - y2) / curv;
  if (!(std::abs(xv) <= 1.0)) return y1;
  return y1 - 0.5 * curv * xv * xv;
}

Extrema surface_extrema(const std::vector<double>& eta) {
  int imax = 0, imin = 0;
  for (int i = 1; i < static_cast<int>(eta.size()); ++i) {
    if (eta[static_cast<std::size_t>(i)] > eta[static_cast<std::size_t>(imax)]) imax = i;
    if (eta[static_cast<std::size_t>(i)] < eta[static_cast<std::size_t>(imin)]) imin = i;
  }
  Extrema e;
  e.sup = refined_vertex(eta, imax, true);
  e.inf = refined_vertex(eta, imin, false);
  return e;
}

struct MarginSet {
  double m_amplitude = 0.0;
  double m_window = 0.0;
  std::optional<double> m_inf_lower;
  std::optional<double> m_sup_lower;
  double m_sup_upper = 0.0;
  std::optional<double> d_minus;
  std::optional<double> d_plus;
};

// The five signed margins for one parameter set. Conjugate depths exist only
// for heads strictly inside (Qc, Q0); outside, the two depth comparisons are
// left absent.
MarginSet margins_for(const FluidParams& fp, const StreamWindow& w, double Q, double bound,
                      const Extrema& e) {
  MarginSet ms;
  ms.m_amplitude = bound - (e.sup - e.inf);
  ms.m_window = std::min(Q - w.Qc, w.Q0 - Q);
  ms.m_sup_upper = w.d0 - e.sup;
  if (Q > w.Qc && Q < w.Q0) {
    DepthPair dp = depth_pair(Q, fp, w);
    ms.d_minus = dp.d_minus;
    ms.d_plus = dp.d_plus;
    ms.m_inf_lower = e.inf - dp.d_minus;
    ms.m_sup_lower = e.sup - dp.d_plus;
  }
  return ms;
}

CheckStatus judge(double margin, double scale) {
  return margin > -kMarginTol * scale ? CheckStatus::Pass : CheckStatus::Fail;
}

}  // namespace

char check_letter(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return 'P';
    case CheckStatus::Fail: return 'F';
    default: return 'V';
  }
}

std::string BoundCertificate::flags() const {
  std::string out;
  for (const InequalityCheck& c : checks) out += check_letter(c.status);
  return out;
}

BoundCertificate certify_wave(const WaveField& wave, const FluidParams& params) {
  params.validate();
  const FluidParams& wp = wave.height.params;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  if (!same(wp.g, params.g) || !same(wp.omega, params.omega) || !same(wp.m, params.m))
    throw std::invalid_argument("certify_wave: parameters disagree with the wave's own");

  SolverOptions gate;
  if (!wave.converged || !(wave.residuals.interior <= gate.interior_threshold) ||
      !(wave.residuals.surface <= gate.surface_threshold))
    throw ConvergenceError("certify_wave: wave is not converged to the acceptance thresholds");

  BoundCertificate cert;
  cert.params = params;
  cert.L = wave.height.L;
  NondimParams nd = nondimensionalize(params);
  cert.lambda = nd.lambda;
  cert.epsilon = nd.epsilon;

  AmplitudeBound ab = refined_bound(params);
  cert.theorem_bound = ab.theorem_bound;
  cert.refined_bound = ab.refined_bound;

  StreamWindow w = stream_window(params);
  cert.Q = wave.height.Q;
  cert.Qc = w.Qc;
  cert.Q0 = w.Q0;
  cert.d0 = w.d0;

  Extrema e = surface_extrema(wave.eta());
  cert.inf_eta = e.inf;
  cert.sup_eta = e.sup;
  cert.amplitude = e.sup - e.inf;
  cert.is_stream = cert.amplitude < kStreamTol * w.d0;

  MarginSet ms = margins_for(params, w, cert.Q, cert.theorem_bound, e);
  cert.d_minus = ms.d_minus;
  cert.d_plus = ms.d_plus;

  cert.checks.resize(5);
  cert.checks[0] = {"amplitude_below_bound", judge(ms.m_amplitude, cert.theorem_bound),
                    ms.m_amplitude, cert.theorem_bound};
  cert.checks[1] = {"head_inside_window", CheckStatus::Vacuous, ms.m_window, w.Q0};
  cert.checks[2] = {"trough_above_d_minus", CheckStatus::Vacuous, ms.m_inf_lower, w.d0};
  cert.checks[3] = {"crest_above_d_plus", CheckStatus::Vacuous, ms.m_sup_lower, w.d0};
  cert.checks[4] = {"crest_below_d0", CheckStatus::Vacuous, ms.m_sup_upper, w.d0};
  if (!cert.is_stream) {
    cert.checks[1].status = judge(ms.m_window, w.Q0);
    if (ms.m_inf_lower) cert.checks[2].status = judge(*ms.m_inf_lower, w.d0);
    if (ms.m_sup_lower) cert.checks[3].status = judge(*ms.m_sup_lower, w.d0);
    cert.checks[4].status = judge(ms.m_sup_upper, w.d0);
  }

  // Redundant scaled route: rescale the wave, recompute every margin on the
  // unit-flux unit-vorticity problem, and record them next to the dimensional
  // ones. Lengths pick up a factor lambda, heads 1/(m*omega).
  {
    WaveField scaled = map_wave_to_nondim(wave, params);
    FluidParams pnd;
    pnd.g = nd.epsilon;
    pnd.omega = 1.0;
    pnd.m = 1.0;
    StreamWindow wnd = stream_window(pnd);
    Extrema end_ = surface_extrema(scaled.eta());
    MarginSet msn = margins_for(pnd, wnd, scaled.height.Q, theorem_bound(pnd), end_);
    cert.nondim_margins = {msn.m_amplitude, msn.m_window, msn.m_inf_lower, msn.m_sup_lower,
                           msn.m_sup_upper};
  }

  cert.stored_residuals = wave.residuals;
  cert.recomputed_residuals = height_residual(wave.height).norms;

  cert.all_pass = true;
  for (const InequalityCheck& c : cert.checks)
    if (c.status == CheckStatus::Fail) cert.all_pass = false;
  return cert;
}

int SweepTable::succeeded() const {
  int n = 0;
  for (const SweepRow& r : rows)
    if (r.ok) ++n;
  return n;
}

SweepTable sweep_vorticity(const std::vector<double>& omegas, const FluidParams& base,
                           const SweepOptions& opts) {
  if (omegas.empty()) throw std::invalid_argument("sweep_vorticity: empty vorticity list");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0)) throw std::invalid_argument("sweep_vorticity: omega must be positive");
    if (i > 0 && !(omegas[i] > omegas[i - 1]))
      throw std::invalid_argument("sweep_vorticity: omegas must be strictly increasing");
  }

  SweepTable table;
  for (double om : omegas) {
    FluidParams fp;
    fp.g = base.g;
    fp.omega = om;
    fp.m = base.m;

    SweepRow row;
    row.omega = om;
    row.g = fp.g;
    row.m = fp.m;
    try {
      AmplitudeBound ab = refined_bound(fp);
      row.theorem_bound = ab.theorem_bound;
      row.refined_bound = ab.refined_bound;
      StreamWindow w = stream_window(fp);
      row.Qc = w.Qc;
      row.Q0 = w.Q0;
      row.d0 = w.d0;

      double target_half = 0.5 * opts.target_d0_fraction * w.d0;

      // A wave over the laminar flow at s stagnates once its crest reaches
      // the energy level Q(s)/g, which caps the half-amplitude at t(s)^2/2g.
      // Near-critical windows (large omega) have tiny ceilings, so slide the
      // base parameter up the window until the ceiling clears the target
      // comfortably; otherwise keep the requested placement.
      double s_mid = w.s0 + opts.window_fraction * (w.sc - w.s0);
      double s_req = std::sqrt(2.0 * om * fp.m + 3.4 * fp.g * target_half);
      if (s_req > s_mid) {
        double f_req = (s_req - w.s0) / (w.sc - w.s0);
        s_mid = w.s0 + std::min(0.9, f_req) * (w.sc - w.s0);
      }
      row.L = wavelength_at(fp, s_mid);

      // The bifurcation mode decays from the surface at rate
      // mu = (b + sqrt(b^2 + 4 k^2)) / 2 with b = 2 omega / t(s_mid), which
      // grows without bound as the window narrows. Resolve that layer at
      // about three rows per e-fold or the branch detaches from the physical
      // one; cap at the supported grid range.
      double t_mid = std::sqrt(s_mid * s_mid - 2.0 * om * fp.m);
      double k1 = 2.0 * kPi / row.L;
      double bl = 2.0 * om / t_mid;
      double mu = 0.5 * (bl + std::sqrt(bl * bl + 4.0 * k1 * k1));
      double d_mid = depth_of_s(s_mid, fp);
      int np_need = static_cast<int>(std::ceil(3.0 * mu * d_mid));
      SolverOptions sopts = opts.solver;
      if (np_need > sopts.n_p) sopts.n_p = std::min(np_need, 200);

      BranchResult br = continue_branch(fp, row.L, target_half, sopts);
      row.reached_target = br.reached_target;
      row.stop_reason = br.stop_reason;
      row.continuation_steps = static_cast<int>(br.steps.size());
      if (!br.reached_target)
        throw ConvergenceError("sweep_vorticity: branch stopped early (" + br.stop_reason + ")");

      BoundCertificate cert = certify_wave(br.wave, fp);
      row.amplitude = cert.amplitude;
      row.Q = cert.Q;
      row.d_minus = cert.d_minus;
      row.d_plus = cert.d_plus;
      row.inf_eta = cert.inf_eta;
      row.sup_eta = cert.sup_eta;
      row.flags = cert.flags();
      row.ok = true;
    } catch (const std::exception& ex) {
      row.ok = false;
      row.error = ex.what();
      row.flags = "error";
    }
    table.rows.push_back(row);
  }
  return table;
}

namespace {

struct FitResult {
  double slope = 0.0;
  double stderr_slope = 0.0;
};

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  int n = static_cast<int>(x.size());
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += x[static_cast<std::size_t>(i)];
    sy += y[static_cast<std::size_t>(i)];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    double dx = x[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (y[static_cast<std::size_t>(i)] - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    double pred = my + r.slope * (x[static_cast<std::size_t>(i)] - mx);
    double res = y[static_cast<std::size_t>(i)] - pred;
    ss += res * res;
  }
  if (n > 2) r.stderr_slope = std::sqrt(ss / (n - 2) / sxx);
  return r;
}

}  // namespace

DecayReport compare_decay_rates(const SweepTable& table) {
  std::vector<double> lw, lbound, lamp, lref;
  for (const SweepRow& r : table.rows) {
    if (!r.ok) continue;
    if (!(r.amplitude > 0.0) || !(r.theorem_bound > 0.0) || !(r.refined_bound > 0.0)) continue;
    lw.push_back(std::log(r.omega));
    lbound.push_back(std::log(r.theorem_bound));
    lamp.push_back(std::log(r.amplitude));
    lref.push_back(std::log(r.refined_bound));
  }
  if (static_cast<int>(lw.size()) < 4)
    throw std::invalid_argument("compare_decay_rates: need at least four successful rows");

  DecayReport rep;
  rep.n_rows = static_cast<int>(lw.size());
  rep.theorem_slope = fit_loglog(lw, lbound).slope;
  FitResult fa = fit_loglog(lw, lamp);
  rep.amplitude_slope = fa.slope;
  rep.amplitude_stderr = fa.stderr_slope;
  rep.refined_slope = fit_loglog(lw, lref).slope;

  // log(2g/omega^2) is exactly linear in log(omega); anything but -2 means
  // the bound column was corrupted.
  if (std::abs(rep.theorem_slope + 2.0) > 1e-12)
    throw std::logic_error("compare_decay_rates: theorem bound decay is not -2");
  return rep;
}

}  // namespace wavebound
