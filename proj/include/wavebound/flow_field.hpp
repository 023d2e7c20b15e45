#pragma once

#include <vector>

#include <wavebound/height_field.hpp>

namespace wavebound {

// Velocity samples on the height-field node set. Entry (i, j) sits at the
// physical point (x_i, y(i,j)) where y(i,j) = h(i,j). Row-major layout,
// index i * (n_p + 1) + j, same as HeightField::h.
struct VelocityField {
  int n_x = 0;
  int n_p = 0;
  double L = 0.0;
  double c = 0.0;             // frame speed added to the steady field
  std::vector<double> y;      // node heights
  std::vector<double> u;      // horizontal velocity
  std::vector<double> v;      // vertical velocity

  double y_at(int i, int j) const { return y[static_cast<std::size_t>(i) * (n_p + 1) + j]; }
  double u_at(int i, int j) const { return u[static_cast<std::size_t>(i) * (n_p + 1) + j]; }
  double v_at(int i, int j) const { return v[static_cast<std::size_t>(i) * (n_p + 1) + j]; }
};

// Reconstructs (u, v) from a wave in stream coordinates. Differentiating
// psi(x, h(x, p)) = p gives psi_y = 1/h_p and psi_x = -h_x/h_p, so with the
// graded vertical coordinate u = c - P'(z_j)/h_z and v = -h_x P'(z_j)/h_z.
// The bottom row has v = 0 exactly (h_x of the zero row vanishes).
VelocityField velocity_from_stream(const WaveField& wave, double c = 0.0);

}  // namespace wavebound
