#include <wavebound/flow_field.hpp>

#include <cstddef>
#include <stdexcept>

#include <wavebound/errors.hpp>

namespace wavebound {

VelocityField velocity_from_stream(const WaveField& wave, double c) {
  const HeightField& f = wave.height;
  if (f.n_x < 8 || f.n_p < 2)
    throw std::invalid_argument("velocity_from_stream: grid too small");
  if (!f.monotone())
    throw MonotonicityError("velocity_from_stream: field is not strictly increasing in p");

  const int nx = f.n_x;
  const int np = f.n_p;
  const double dx = f.dx();
  const double dz = f.dz();

  VelocityField out;
  out.n_x = nx;
  out.n_p = np;
  out.L = f.L;
  out.c = c;
  out.y.assign(static_cast<std::size_t>(nx) * (np + 1), 0.0);
  out.u.assign(out.y.size(), 0.0);
  out.v.assign(out.y.size(), 0.0);

  auto wrap = [nx](int i) { return (i % nx + nx) % nx; };
  auto ddx = [&](int i, int j) {
    return (-f.at(wrap(i + 2), j) + 8.0 * f.at(wrap(i + 1), j) - 8.0 * f.at(wrap(i - 1), j) +
            f.at(wrap(i - 2), j)) /
           (12.0 * dx);
  };
  auto ddz = [&](int i, int j) {
    if (j == 0) return (-3.0 * f.at(i, 0) + 4.0 * f.at(i, 1) - f.at(i, 2)) / (2.0 * dz);
    if (j == np) return (3.0 * f.at(i, np) - 4.0 * f.at(i, np - 1) + f.at(i, np - 2)) / (2.0 * dz);
    return (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * dz);
  };

  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j <= np; ++j) {
      double hz = ddz(i, j);
      if (!(hz > 0.0))
        throw MonotonicityError("velocity_from_stream: nonpositive discrete h_z");
      double psi_y = f.pprime_of(j) / hz;
      std::size_t idx = static_cast<std::size_t>(i) * (np + 1) + j;
      out.y[idx] = f.at(i, j);
      out.u[idx] = c - psi_y;
      out.v[idx] = -ddx(i, j) * psi_y;
    }
  }
  return out;
}

}  // namespace wavebound
