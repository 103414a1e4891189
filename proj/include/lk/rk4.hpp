#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace lk {

using cxd = std::complex<double>;

/// One classical 4th-order Runge-Kutta step for y' = rhs(t, y).
/// rhs(t, y, dydt) writes the derivative of y into dydt (same length).
template <class Rhs>
void rk4_step(const Rhs& rhs, double t, double dt, std::vector<cxd>& y) {
  const size_t n = y.size();
  std::vector<cxd> k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs(t, y, k1);
  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  rhs(t + 0.5 * dt, tmp, k2);
  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  rhs(t + 0.5 * dt, tmp, k3);
  for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  rhs(t + dt, tmp, k4);
  for (size_t i = 0; i < n; ++i)
    y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

/// Fixed-step RK4 over [t0, t1].  Step boundaries are forced at the sorted
/// interior breakpoints (driver discontinuities); the final step of every
/// segment is shortened to land exactly on the segment end.  The observer is
/// called after every accepted step with (t, y).
template <class Rhs, class Observer>
void rk4_integrate(const Rhs& rhs, double t0, double t1, double dt,
                   std::span<const double> breakpoints, std::vector<cxd>& y,
                   const Observer& observe) {
  if (!(dt > 0)) throw std::invalid_argument("rk4_integrate: dt must be positive");
  if (!(t1 > t0)) throw std::invalid_argument("rk4_integrate: empty time interval");

  std::vector<double> knots;
  for (double b : breakpoints)
    if (b > t0 && b < t1) knots.push_back(b);
  knots.push_back(t1);
  std::sort(knots.begin(), knots.end());

  double t = t0;
  for (double end : knots) {
    while (t < end) {
      const double h = std::min(dt, end - t);
      if (h < 1e-14 * dt) break;
      rk4_step(rhs, t, h, y);
      double tn = t + h;
      if (end - tn < 1e-12 * dt) tn = end;
      t = tn;
      observe(t, y);
    }
    t = end;
  }
}

}  // namespace lk
