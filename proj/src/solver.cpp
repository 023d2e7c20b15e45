#include <wavebound/solver.hpp>

#include <cstdio>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <wavebound/errors.hpp>
#include <wavebound/root_finding.hpp>
#include <wavebound/stream_flows.hpp>

namespace wavebound {

namespace {

constexpr double kPi = 3.141592653589793;

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Shot {
  double D = 0.0;
  std::vector<double> phi;  // samples at requested nodes, same order
};

// Shooting integration of phi'' = (2 omega / P') phi' + k^2 phi from the bed,
// phi(0) = 0, phi'(0) = 1. P'(z) = s - omega z vanishes at z = s/omega >= d,
// so steps shrink geometrically toward the top; RK4 in between. The result is
// homogeneous in (phi, phi'), so overflow guards rescale both.
Shot shoot(const FluidParams& fp, double s, double k, const std::vector<double>* nodes) {
  double d = depth_of_s(s, fp);
  double zsing = s / fp.omega;
  double base = d / 1000.0;
  double f = 0.0, df = 1.0;
  double z = 0.0;
  Shot out;
  if (nodes) out.phi.reserve(nodes->size());
  std::size_t next = 0;
  auto record_until = [&](double zq) {
    if (!nodes) return;
    while (next < nodes->size() && (*nodes)[next] <= zq + 1e-14 * d) {
      out.phi.push_back(f);  // nodes coincide with step endpoints by construction
      ++next;
    }
  };
  auto rhs = [&](double zz, double ff, double dd, double& of, double& odf) {
    double pp = s - fp.omega * zz;
    of = dd;
    odf = 2.0 * fp.omega * dd / pp + k * k * ff;
  };
  record_until(0.0);
  int guard = 0;
  while (z < d) {
    double dz = std::min(base, 0.2 * (zsing - z));
    double ztarget = d;
    if (nodes && next < nodes->size() && (*nodes)[next] < d) ztarget = (*nodes)[next];
    if (z + dz > ztarget) dz = ztarget - z;
    double k1f, k1d, k2f, k2d, k3f, k3d, k4f, k4d;
    rhs(z, f, df, k1f, k1d);
    rhs(z + 0.5 * dz, f + 0.5 * dz * k1f, df + 0.5 * dz * k1d, k2f, k2d);
    rhs(z + 0.5 * dz, f + 0.5 * dz * k2f, df + 0.5 * dz * k2d, k3f, k3d);
    rhs(z + dz, f + dz * k3f, df + dz * k3d, k4f, k4d);
    f += dz / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    df += dz / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    z += dz;
    if (std::abs(f) > 1e140 || std::abs(df) > 1e140) {
      double sc = 1.0 / std::max(std::abs(f), std::abs(df));
      f *= sc;
      df *= sc;
      for (double& v : out.phi) v *= sc;
    }
    record_until(z);
    if (++guard > 2000000)
      throw ConvergenceError("shoot: step count exceeded (parameters too close to critical)");
  }
  record_until(d + d);  // flush nodes at (or rounding-above) the top
  double T = s - fp.omega * d;
  out.D = T * T * df - fp.g * f;
  return out;
}

inline int wrap(int i, int n) { return (i % n + n) % n; }

// Discrete system for one Newton solve: unknowns are h(i,j) for j=1..np
// (bottom row eliminated), the head Q, and the translation-unfolding drift
// tau. Equations: interior rows, surface rows, the amplitude pin
// (h(0,top) - h(nx/2,top))/2 = a, and the sine phase pin. The drift term
// tau * b(i,j) with the fixed odd profile b = sin(2 pi x/L) z/d squares the
// translation degeneracy: the border keeps full rank down to zero amplitude
// (the natural choice b = h_x degenerates like the amplitude itself), and
// solutions still have tau = 0 exactly since the phase pin removes the only
// odd inconsistency.
struct NewtonSystem {
  FluidParams fp;
  double L, dx, dz, T;
  int nx, np;
  std::vector<double> pp;  // P'(z_j)
  std::vector<double> phase_w;
  std::vector<double> sin_x;  // sin(2 pi i / nx)

  NewtonSystem(const HeightField& f)
      : fp(f.params), L(f.L), dx(f.dx()), dz(f.dz()), nx(f.n_x), np(f.n_p) {
    pp.resize(np + 1);
    for (int j = 0; j <= np; ++j) pp[j] = f.pprime_of(j);
    T = pp[np];
    phase_w.resize(nx);
    sin_x.resize(nx);
    for (int i = 0; i < nx; ++i) {
      sin_x[i] = std::sin(2.0 * kPi * i / nx);
      phase_w[i] = 2.0 / nx * sin_x[i];
    }
  }

  double bdrift(int i, int j) const { return sin_x[i] * j / np; }

  int hidx(int i, int j) const { return i * np + (j - 1); }
  int qidx() const { return nx * np; }
  int tidx() const { return nx * np + 1; }
  int n_unknowns() const { return nx * np + 2; }

  double hval(const Eigen::VectorXd& u, int i, int j) const {
    return j == 0 ? 0.0 : u[hidx(wrap(i, nx), j)];
  }

  // Scaled residual norm used for the Newton floor; NaN-safe (NaN -> huge).
  double assemble(const Eigen::VectorXd& u, double a, Eigen::VectorXd& F,
                  std::vector<Eigen::Triplet<double>>* trip) const {
    const double om = fp.omega, g = fp.g;
    const double Q = u[qidx()], tau = u[tidx()];
    F.setZero(n_unknowns());
    if (trip) {
      trip->clear();
      trip->reserve(static_cast<std::size_t>(nx) * np * 22);
    }
    double worst = 0.0;
    double surf_scale = std::max({std::abs(Q), T * T, g * dz * np});
    auto note = [&](double r, double scale) {
      double v = std::abs(r) / scale;
      if (!(v <= 1e300)) v = 1e301;
      if (v > worst) worst = v;
    };
    // 4th-order periodic first-derivative weights at offsets -2,-1,+1,+2
    const int xoff[4] = {-2, -1, 1, 2};
    const double xw[4] = {1.0 / (12.0 * dx), -8.0 / (12.0 * dx), 8.0 / (12.0 * dx),
                          -1.0 / (12.0 * dx)};
    const int x2off[5] = {-2, -1, 0, 1, 2};
    const double x2w[5] = {-1.0 / (12.0 * dx * dx), 16.0 / (12.0 * dx * dx),
                           -30.0 / (12.0 * dx * dx), 16.0 / (12.0 * dx * dx),
                           -1.0 / (12.0 * dx * dx)};
    for (int i = 0; i < nx; ++i) {
      for (int j = 1; j < np; ++j) {
        double X = 0.0, X2 = 0.0, M = 0.0;
        for (int t = 0; t < 4; ++t) X += xw[t] * hval(u, i + xoff[t], j);
        for (int t = 0; t < 5; ++t) X2 += x2w[t] * hval(u, i + x2off[t], j);
        for (int t = 0; t < 4; ++t)
          M += xw[t] * (hval(u, i + xoff[t], j + 1) - hval(u, i + xoff[t], j - 1)) / (2.0 * dz);
        double S1 = (hval(u, i, j + 1) - hval(u, i, j - 1)) / (2.0 * dz);
        double S2 = (hval(u, i, j + 1) - 2.0 * hval(u, i, j) + hval(u, i, j - 1)) / (dz * dz);
        double ppj = pp[j];
        double r = (1.0 + X * X) * (ppj * S2 + om * S1) - 2.0 * ppj * S1 * X * M +
                   ppj * S1 * S1 * X2 - om * S1 * S1 * S1 + tau * bdrift(i, j);
        int row = hidx(i, j);
        F[row] = r;
        note(r, om);
        if (trip) {
          double dX = 2.0 * X * (ppj * S2 + om * S1) - 2.0 * ppj * S1 * M;
          double dX2 = ppj * S1 * S1;
          double dS1 = om * (1.0 + X * X) - 2.0 * ppj * X * M + 2.0 * ppj * S1 * X2 -
                       3.0 * om * S1 * S1;
          double dS2 = ppj * (1.0 + X * X);
          double dM = -2.0 * ppj * S1 * X;
          auto add = [&](int ii, int jj, double w) {
            if (jj == 0 || w == 0.0) return;
            trip->emplace_back(row, hidx(wrap(ii, nx), jj), w);
          };
          for (int t = 0; t < 4; ++t) add(i + xoff[t], j, dX * xw[t]);
          for (int t = 0; t < 5; ++t) add(i + x2off[t], j, dX2 * x2w[t]);
          add(i, j + 1, dS1 / (2.0 * dz));
          add(i, j - 1, -dS1 / (2.0 * dz));
          add(i, j + 1, dS2 / (dz * dz));
          add(i, j, -2.0 * dS2 / (dz * dz));
          add(i, j - 1, dS2 / (dz * dz));
          for (int t = 0; t < 4; ++t) {
            add(i + xoff[t], j + 1, dM * xw[t] / (2.0 * dz));
            add(i + xoff[t], j - 1, -dM * xw[t] / (2.0 * dz));
          }
          if (bdrift(i, j) != 0.0) trip->emplace_back(row, tidx(), bdrift(i, j));
        }
      }
      // surface row
      {
        double X = 0.0;
        for (int t = 0; t < 4; ++t) X += xw[t] * hval(u, i + xoff[t], np);
        double S1s = (3.0 * hval(u, i, np) - 4.0 * hval(u, i, np - 1) + hval(u, i, np - 2)) /
                     (2.0 * dz);
        double r = (1.0 + X * X) * T * T / (2.0 * S1s * S1s) + g * hval(u, i, np) - Q +
                   tau * bdrift(i, np);
        int row = hidx(i, np);
        F[row] = r;
        note(r, surf_scale);
        if (trip) {
          double dX = X * T * T / (S1s * S1s);
          double dS = -(1.0 + X * X) * T * T / (S1s * S1s * S1s);
          auto add = [&](int ii, int jj, double w) {
            if (jj == 0 || w == 0.0) return;
            trip->emplace_back(row, hidx(wrap(ii, nx), jj), w);
          };
          for (int t = 0; t < 4; ++t) add(i + xoff[t], np, dX * xw[t]);
          add(i, np, 3.0 * dS / (2.0 * dz) + g);
          add(i, np - 1, -4.0 * dS / (2.0 * dz));
          add(i, np - 2, dS / (2.0 * dz));
          trip->emplace_back(row, qidx(), -1.0);
          if (bdrift(i, np) != 0.0) trip->emplace_back(row, tidx(), bdrift(i, np));
        }
      }
    }
    double con_scale = std::max(1.0, dz * np);
    {  // amplitude pin
      int row = qidx();
      double r = 0.5 * (hval(u, 0, np) - hval(u, nx / 2, np)) - a;
      F[row] = r;
      note(r, con_scale);
      if (trip) {
        trip->emplace_back(row, hidx(0, np), 0.5);
        trip->emplace_back(row, hidx(nx / 2, np), -0.5);
      }
    }
    {  // phase pin
      int row = tidx();
      double r = 0.0;
      for (int i = 0; i < nx; ++i) r += phase_w[i] * hval(u, i, np);
      F[row] = r;
      note(r, con_scale);
      if (trip)
        for (int i = 0; i < nx; ++i)
          if (phase_w[i] != 0.0) trip->emplace_back(row, hidx(i, np), phase_w[i]);
    }
    return worst;
  }
};

// One damped Newton solve at fixed amplitude. The initial field supplies the
// grid identity (s_ref, d_ref, L); Q0 seeds the head unknown. On success the
// field is overwritten with the solution.
WaveField newton_solve(HeightField field, double Q0, double a, const SolverOptions& opts) {
  NewtonSystem sys(field);
  const int N = sys.n_unknowns();
  Eigen::VectorXd u(N);
  for (int i = 0; i < sys.nx; ++i)
    for (int j = 1; j <= sys.np; ++j) u[sys.hidx(i, j)] = field.at(i, j);
  u[sys.qidx()] = Q0;
  u[sys.tidx()] = 0.0;

  Eigen::VectorXd F(N), Ftrial(N);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::SparseMatrix<double> J(N, N);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;

  // Iterate to the rounding floor of the discrete residual; the acceptance
  // decision below is made on the reported residual thresholds, not here.
  double norm = sys.assemble(u, a, F, nullptr);
  int iters = 0;
  for (; iters < opts.max_newton_iter && norm > 5e-14; ++iters) {
    sys.assemble(u, a, F, &trip);
    J.setFromTriplets(trip.begin(), trip.end());
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw ConvergenceError("newton_solve: singular Jacobian");
    Eigen::VectorXd delta = lu.solve(-F);
    if (lu.info() != Eigen::Success)
      throw ConvergenceError("newton_solve: linear solve failed");
    double step = 1.0;
    bool accepted = false;
    double nnew = norm;
    for (int back = 0; back < 5; ++back, step *= 0.5) {
      Eigen::VectorXd utrial = u + step * delta;
      double ntrial = sys.assemble(utrial, a, Ftrial, nullptr);
      if (ntrial < norm) {
        u = utrial;
        nnew = ntrial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (norm < 1e-9) break;  // stuck at the rounding floor; let the gate decide
      throw ConvergenceError("newton_solve: line search failed at scaled residual " +
                             format_sci(norm));
    }
    norm = nnew;
  }

  for (int i = 0; i < sys.nx; ++i)
    for (int j = 1; j <= sys.np; ++j) field.at(i, j) = u[sys.hidx(i, j)];
  field.Q = u[sys.qidx()];

  WaveField wave;
  wave.height = field;
  wave.newton_iterations = iters;
  ResidualField rep = height_residual(field);  // throws MonotonicityError if lost
  wave.residuals = rep.norms;
  wave.converged = rep.norms.interior <= opts.interior_threshold &&
                   rep.norms.surface <= opts.surface_threshold;
  if (!wave.converged)
    throw ConvergenceError("newton_solve: residual thresholds not met (interior " +
                           format_sci(rep.norms.interior) + ", surface " +
                           format_sci(rep.norms.surface) + ")");
  return wave;
}

double min_psi_y(const HeightField& f) {
  double best = HUGE_VAL;
  double dzv = f.dz();
  for (int i = 0; i < f.n_x; ++i)
    for (int j = 0; j < f.n_p; ++j) {
      double pp_half = f.s_ref - f.params.omega * (f.z_of(j) + 0.5 * dzv);
      double v = pp_half * dzv / (f.at(i, j + 1) - f.at(i, j));
      if (v < best) best = v;
    }
  return best;
}

void validate_grid(const SolverOptions& opts) {
  if (opts.n_x < 8 || opts.n_x % 2 != 0)
    throw std::invalid_argument("solver: n_x must be even and at least 8");
  if (opts.n_p < 8) throw std::invalid_argument("solver: n_p must be at least 8");
}

struct GridShot {
  double D = 0.0;           // discrete dispersion value, same sign convention as Shot::D
  std::vector<double> phi;  // mode samples at rows 0..n_p, phi[n_p] = 1
};

// Linearizing the discrete residual at the exact laminar state h = z in the
// direction phi_j cos(2 pi x_i / L) decouples the rows: the x stencils reduce
// to their symbol at the fundamental wavenumber and the vertical part becomes
// a three-term recurrence. Marching it from the bed gives the null mode of
// the discretized operator itself, so a predictor built from it leaves only
// an O(amplitude^2) defect no matter how steep the mode gradient near the
// surface is. The continuum shot drifts away from this once the surface
// layer of the mode is a few grid spacings wide.
GridShot grid_mode_shot(const HeightField& grid) {
  int np = grid.n_p;
  double om = grid.params.omega;
  double dzv = grid.dz();
  double th = 2.0 * kPi / grid.n_x;
  double dxv = grid.dx();
  // Symbol of the fourth-order periodic second derivative on cos(th*i).
  double sig2 = (30.0 - 32.0 * std::cos(th) + 2.0 * std::cos(2.0 * th)) / (12.0 * dxv * dxv);

  std::vector<double> phi(np + 1);
  phi[0] = 0.0;
  phi[1] = dzv;
  for (int j = 1; j < np; ++j) {
    double pp = grid.pprime_of(j);
    double below = pp + om * dzv;  // P' one row down
    double above = pp - om * dzv;  // P' one row up, positive while s_ref > s0
    phi[j + 1] = (pp * (2.0 + dzv * dzv * sig2) * phi[j] - below * phi[j - 1]) / above;
    if (std::abs(phi[j + 1]) > 1e100) {
      double sc = 1.0 / std::abs(phi[j + 1]);
      for (int r = 0; r <= j + 1; ++r) phi[r] *= sc;
    }
  }
  double T = grid.pprime_of(np);
  double slope = (3.0 * phi[np] - 4.0 * phi[np - 1] + phi[np - 2]) / (2.0 * dzv);
  GridShot out;
  out.D = T * T * slope - grid.params.g * phi[np];
  double top = phi[np];
  if (top == 0.0) throw BifurcationError("grid_mode_shot: degenerate mode at the surface");
  for (int j = 0; j <= np; ++j) phi[j] /= top;
  out.phi = std::move(phi);
  return out;
}

}  // namespace

double dispersion_value(const FluidParams& fp, double s, double k) {
  fp.validate();
  if (!(k > 0.0)) throw std::invalid_argument("dispersion_value: k must be positive");
  if (!(s > std::sqrt(2.0 * fp.omega * fp.m)))
    throw BelowCriticalError("dispersion_value: s must exceed sqrt(2*omega*m)");
  return shoot(fp, s, k, nullptr).D;
}

double bifurcation_point(const FluidParams& fp, double L) {
  fp.validate();
  if (!(L > 0.0)) throw std::invalid_argument("bifurcation_point: L must be positive");
  double k = 2.0 * kPi / L;
  StreamWindow w = stream_window(fp);
  auto D = [&](double s) { return shoot(fp, s, k, nullptr).D; };
  // D -> -inf at s0 and D(sc) > 0: the unique zero in between is the branch.
  double off = 1e-8;
  double lo = w.s0 + off * (w.sc - w.s0);
  int guard = 0;
  while (D(lo) >= 0.0) {
    off *= 0.1;
    if (off < 1e-14 || ++guard > 10)
      throw BifurcationError("bifurcation_point: no sign change above s0 for L = " +
                             std::to_string(L));
    lo = w.s0 + off * (w.sc - w.s0);
  }
  if (D(w.sc) <= 0.0)
    throw BifurcationError("bifurcation_point: dispersion does not change sign below sc");
  return bisect(D, lo, w.sc);
}

double discrete_bifurcation(const FluidParams& fp, double L, int n_x, int n_p) {
  fp.validate();
  if (!(L > 0.0)) throw std::invalid_argument("discrete_bifurcation: L must be positive");
  if (n_x < 8 || n_x % 2 != 0)
    throw std::invalid_argument("discrete_bifurcation: n_x must be even and at least 8");
  if (n_p < 8) throw std::invalid_argument("discrete_bifurcation: n_p must be at least 8");
  StreamWindow w = stream_window(fp);
  auto D = [&](double s) {
    HeightField grid = laminar_grid(fp, s, n_x, n_p);
    grid.L = L;
    return grid_mode_shot(grid).D;
  };
  // Same orientation as the continuum dispersion: negative near s0 where the
  // surface slip vanishes, positive at sc.
  double off = 1e-8;
  double lo = w.s0 + off * (w.sc - w.s0);
  int guard = 0;
  while (D(lo) >= 0.0) {
    off *= 0.1;
    if (off < 1e-14 || ++guard > 10)
      throw BifurcationError("discrete_bifurcation: no sign change above s0 for L = " +
                             std::to_string(L));
    lo = w.s0 + off * (w.sc - w.s0);
  }
  if (D(w.sc) <= 0.0)
    throw BifurcationError("discrete_bifurcation: dispersion does not change sign below sc");
  return bisect(D, lo, w.sc);
}

double wavelength_at(const FluidParams& fp, double s) {
  fp.validate();
  StreamWindow w = stream_window(fp);
  if (!(s > w.s0) || !(s < w.sc))
    throw std::invalid_argument("wavelength_at: s must lie strictly inside (s0, sc)");
  double d = depth_of_s(s, fp);
  auto D = [&](double k) { return shoot(fp, s, k, nullptr).D; };
  // In k the dispersion is negative for long waves and positive for short.
  double klo = 1e-4 / d;
  int guard = 0;
  while (D(klo) >= 0.0) {
    klo *= 0.25;
    if (++guard > 60) throw BifurcationError("wavelength_at: no long-wave sign change");
  }
  double khi = 2.0 * klo;
  guard = 0;
  while (D(khi) <= 0.0) {
    khi *= 2.0;
    if (++guard > 60) throw BifurcationError("wavelength_at: no short-wave sign change");
  }
  double k = bisect(D, klo, khi);
  return 2.0 * kPi / k;
}

BranchResult continue_branch(const FluidParams& fp, double L, double amplitude,
                             const SolverOptions& opts) {
  fp.validate();
  validate_grid(opts);
  if (!(L > 0.0)) throw std::invalid_argument("continue_branch: L must be positive");
  if (amplitude < 0.0) throw std::invalid_argument("continue_branch: amplitude must be >= 0");

  // The branch lives on the grid, so seed it from the grid's own bifurcation
  // point and null mode rather than the continuum ones; they separate once the
  // mode develops a thin surface layer (large omega, short waves).
  double s_star = discrete_bifurcation(fp, L, opts.n_x, opts.n_p);
  HeightField base = laminar_grid(fp, s_star, opts.n_x, opts.n_p);
  base.L = L;

  BranchResult br;
  if (amplitude == 0.0) {
    WaveField wave;
    wave.height = base;
    wave.residuals = height_residual(base).norms;
    wave.converged = true;
    br.wave = wave;
    br.steps.push_back(wave);
    br.achieved_amplitude = 0.0;
    br.reached_target = true;
    return br;
  }

  // Null mode of the discretized operator at the base state, surface value 1.
  std::vector<double> phi = grid_mode_shot(base).phi;

  double d0 = std::sqrt(2.0 * fp.m / fp.omega);
  double stag_threshold = opts.stagnation_fraction * fp.m / d0;

  double da = opts.amplitude_step > 0.0 ? opts.amplitude_step : amplitude / 10.0;
  double min_da = opts.min_amplitude_step > 0.0 ? opts.min_amplitude_step : amplitude * 1e-4;

  HeightField cur = base, prev = base;
  double Q_cur = base.Q, Q_prev = base.Q;
  double a_cur = 0.0, a_prev = 0.0;
  bool have_prev = false;
  std::string last_error;

  for (int step = 0; step < opts.max_continuation_steps; ++step) {
    if (a_cur >= amplitude * (1.0 - 1e-14)) {
      br.reached_target = true;
      break;
    }
    double a_next = std::min(a_cur + da, amplitude);
    HeightField guess = cur;
    double Q_guess = Q_cur;
    if (have_prev && a_cur > a_prev) {
      double fac = (a_next - a_cur) / (a_cur - a_prev);
      for (std::size_t n = 0; n < guess.h.size(); ++n)
        guess.h[n] = cur.h[n] + fac * (cur.h[n] - prev.h[n]);
      Q_guess = Q_cur + fac * (Q_cur - Q_prev);
    } else {
      for (int i = 0; i < guess.n_x; ++i) {
        double c = std::cos(2.0 * kPi * i / guess.n_x);
        for (int j = 1; j <= guess.n_p; ++j)
          guess.at(i, j) = cur.at(i, j) + (a_next - a_cur) * phi[j] * c;
      }
    }
    try {
      WaveField wave = newton_solve(guess, Q_guess, a_next, opts);
      if (min_psi_y(wave.height) < stag_threshold) {
        br.stop_reason = "stagnation stop: min(psi_y) fell below " +
                         std::to_string(stag_threshold) + " before amplitude " +
                         std::to_string(a_next);
        break;
      }
      prev = cur;
      Q_prev = Q_cur;
      a_prev = a_cur;
      cur = wave.height;
      Q_cur = wave.height.Q;
      a_cur = a_next;
      have_prev = true;
      br.steps.push_back(wave);
      br.wave = wave;
    } catch (const ConvergenceError& e) {
      last_error = e.what();
      da *= 0.5;
      have_prev = false;  // extrapolation basis is stale after a failure
      if (da < min_da) {
        br.stop_reason = "continuation stalled: " + last_error;
        break;
      }
    } catch (const MonotonicityError& e) {
      last_error = e.what();
      da *= 0.5;
      have_prev = false;
      if (da < min_da) {
        br.stop_reason = "continuation stalled: " + last_error;
        break;
      }
    }
  }
  if (a_cur >= amplitude * (1.0 - 1e-14)) br.reached_target = true;
  if (br.steps.empty() && !br.reached_target) {
    if (br.stop_reason.empty()) br.stop_reason = "continuation made no progress";
    // keep the laminar base as the (amplitude zero) result
    WaveField wave;
    wave.height = base;
    wave.residuals = height_residual(base).norms;
    wave.converged = true;
    br.wave = wave;
  }
  if (!br.reached_target && br.stop_reason.empty())
    br.stop_reason = "continuation step budget exhausted";
  br.achieved_amplitude = a_cur;
  return br;
}

WaveField solve_periodic(const FluidParams& fp, double L, double amplitude,
                         const SolverOptions& opts, const HeightField* init) {
  fp.validate();
  validate_grid(opts);
  if (!(L > 0.0)) throw std::invalid_argument("solve_periodic: L must be positive");
  if (amplitude < 0.0) throw std::invalid_argument("solve_periodic: amplitude must be >= 0");
  if (init) {
    HeightField start = *init;
    start.L = L;
    return newton_solve(start, init->Q, amplitude, opts);
  }
  BranchResult br = continue_branch(fp, L, amplitude, opts);
  if (!br.reached_target)
    throw ConvergenceError("solve_periodic: branch terminated before the requested amplitude (" +
                           br.stop_reason + ")");
  return br.wave;
}

}  // namespace wavebound
