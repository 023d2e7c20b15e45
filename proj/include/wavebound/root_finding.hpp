#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>

#include <wavebound/errors.hpp>

namespace wavebound {

inline constexpr double kRootTolRel = 1e-12;
inline constexpr int kRootMaxIter = 200;

// Bisection on a bracketing interval. f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double tol_rel = kRootTolRel,
              int max_iter = kRootMaxIter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw ConvergenceError("bisect: endpoints do not bracket a root");
  for (int it = 0; it < max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (std::abs(hi - lo) <= tol_rel * std::abs(mid)) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

// Safeguarded Newton: takes a Newton step while it stays inside the current
// bracket and keeps halving the interval, otherwise bisects. The bracket is
// maintained throughout, so convergence is guaranteed for continuous f.
template <class F, class DF>
double find_root(F&& f, DF&& df, double lo, double hi,
                 double tol_rel = kRootTolRel, int max_iter = kRootMaxIter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw ConvergenceError("find_root: endpoints do not bracket a root");
  double xl = lo, xh = hi;
  if (flo > 0.0) std::swap(xl, xh);  // keep f(xl) < 0 < f(xh)
  double x = 0.5 * (lo + hi);
  double dxold = std::abs(hi - lo);
  double dx = dxold;
  double fx = f(x), dfx = df(x);
  for (int it = 0; it < max_iter; ++it) {
    bool newton_ok = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) < 0.0 &&
                     std::abs(2.0 * fx) < std::abs(dxold * dfx);
    if (newton_ok) {
      dxold = dx;
      dx = fx / dfx;
      x -= dx;
    } else {
      dxold = dx;
      dx = 0.5 * (xh - xl);
      x = xl + dx;
    }
    if (std::abs(dx) <= tol_rel * std::abs(x)) return x;
    fx = f(x);
    dfx = df(x);
    if (fx == 0.0) return x;
    if (fx < 0.0)
      xl = x;
    else
      xh = x;
  }
  return x;
}

}  // namespace wavebound
