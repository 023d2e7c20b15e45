#pragma once

#include <cstddef>
#include <vector>

#include <wavebound/fluid_params.hpp>

namespace wavebound {

// Height function h(x', p) of a periodic unidirectional wave: h is the height
// at which the stream function reaches p, so h(x', 0) = 0 at the bed and
// h(x', m) = eta(x') at the surface. The strip [0, L) x [0, m] is discretized
// with n_x periodic columns and a graded row layout in p: rows sit at
// p_j = P(z_j) where P(z) = -omega z^2/2 + s_ref z is the laminar stream
// function of a reference flow and z_j is uniform on [0, depth_of_s(s_ref)].
// In the z coordinate every laminar field is exactly linear, which keeps the
// discrete residual of stream fields at rounding level. s_ref is part of the
// field's identity: residuals and Jacobians are evaluated on its grid.
struct HeightField {
  FluidParams params;
  double L = 0.0;      // wavelength
  double Q = 0.0;      // Bernoulli head
  double s_ref = 0.0;  // reference laminar parameter defining the row grading
  double d_ref = 0.0;  // grid top: depth_of_s(s_ref), stored so the spacing is exact
  int n_x = 0;         // periodic columns, x_i = i*L/n_x
  int n_p = 0;         // row intervals; rows j = 0..n_p, bottom row pinned to 0
  std::vector<double> h;  // row-major: h[i*(n_p+1) + j]

  double& at(int i, int j) { return h[static_cast<std::size_t>(i) * (n_p + 1) + j]; }
  double at(int i, int j) const { return h[static_cast<std::size_t>(i) * (n_p + 1) + j]; }

  double dx() const { return L / n_x; }
  double z_top() const { return d_ref; }
  double dz() const { return d_ref / n_p; }
  double z_of(int j) const { return dz() * j; }
  double p_of(int j) const;     // P(z_j); p_of(n_p) = m up to rounding
  double pprime_of(int j) const;  // P'(z_j) = s_ref - omega*z_j > 0 below the top

  // Strict monotonicity of h in the vertical at every column (psi_y > 0).
  bool monotone() const;
};

// Grid of the laminar flow with parameter s: the spacing is d(s)/n_p rounded
// to 45 mantissa bits so that all z_j = j*dz are exact doubles, and s_ref is
// re-fitted to the rounded grid top (relative shift below 3e-14). The vertical
// differences of a stream column h = z then cancel exactly; what remains of
// its discrete residual is x-stencil rounding, below 1e-12.
HeightField laminar_grid(const FluidParams& fp, double s, int n_x, int n_p);

struct ResidualNorms {
  double interior = 0.0;  // max norm over interior nodes
  double surface = 0.0;   // max norm over surface nodes
};

// Interior and surface residual grids of the height equation. interior is
// row-major over i = 0..n_x-1, j = 1..n_p-1; surface has one entry per column.
struct ResidualField {
  int n_x = 0;
  int n_p = 0;
  std::vector<double> interior;
  std::vector<double> surface;
  ResidualNorms norms;
};

// A computed wave: the height field plus convergence metadata. The surface
// profile is the top row, eta(i) = height.at(i, n_p).
struct WaveField {
  HeightField height;
  ResidualNorms residuals;   // norms reported by the producer
  bool converged = false;
  int newton_iterations = 0;

  double eta(int i) const { return height.at(i, height.n_p); }
  std::vector<double> eta() const;
};

// x'-independent field of the laminar flow with parameter s: on its own grid
// (s_ref = s) the column is exactly h(z_j) = z_j. Q is set to bernoulli_of_s(s).
HeightField stream_height(const FluidParams& fp, double s);

// Finite-difference residual: fourth-order periodic differences in x', second
// order in the vertical, one-sided top derivative for the surface condition.
// Interior values are the graded-grid form of the height equation divided by
// omega, so they are dimensionless and mean the same thing across parameter
// regimes (the laminar balance sets the term scale to omega). Multiplying a
// value by omega / P'(z)^3 recovers the untransformed equation
//   (1+h_x^2) h_pp - 2 h_p h_x h_xp + h_p^2 h_xx - omega h_p^3
// at that node. Surface values are raw Bernoulli defects. Throws
// MonotonicityError if h fails to increase strictly in the vertical.
ResidualField height_residual(const HeightField& field);

}  // namespace wavebound
