#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "lk/series.hpp"

namespace lk {

using cxd = std::complex<double>;

/// Expansion of the point-kernel driver (e^{iu} + z)/(e^{iu} - z):
/// 1 + 2 sum_{k=1}^{order} e^{-iku} z^k.
TruncatedTaylor<cxd> kernel_series(double u, int order);

enum class DrivingKind { constant, piecewise, kernel, samples };

/// Time-dependent driver p(z,t) for the coefficient flows.  Normalized
/// drivers carry p(0,t) = 1; with `alternate` set the constant term u_0 is
/// free and the real part of p is unconstrained.
class DrivingFunction {
 public:
  static DrivingFunction constant(std::vector<cxd> p, bool alternate = false);
  static DrivingFunction piecewise(std::vector<double> times, std::vector<std::vector<cxd>> p,
                                   bool alternate = false);
  static DrivingFunction kernel(double u, int order);
  static DrivingFunction kernel_table(std::vector<double> times, std::vector<double> u, int order);
  static DrivingFunction samples(std::vector<double> times, std::vector<std::vector<cxd>> p,
                                 bool alternate = false);
  static DrivingFunction from_json(const nlohmann::json& spec);

  DrivingKind kind() const { return kind_; }
  int order() const { return order_; }
  bool alternate() const { return alternate_; }

  /// Coefficients at time t as a series of order max(order(), min_order).
  /// The driver is a genuine polynomial, so padding past its own order adds
  /// true zeros, not pretended precision.
  TruncatedTaylor<cxd> series(double t, int min_order = -1) const;

  /// Pointwise value; the kernel kind evaluates its closed form.
  cxd eval(cxd z, double t) const;

  /// Times where the coefficient data is non-smooth; integrators force step
  /// boundaries here.
  std::vector<double> breakpoints() const;

  std::string describe() const;

 private:
  DrivingFunction() = default;

  std::vector<cxd> coefficients(double t) const;
  double kernel_angle(double t) const;

  DrivingKind kind_ = DrivingKind::constant;
  int order_ = 0;
  bool alternate_ = false;
  std::vector<double> times_;
  std::vector<std::vector<cxd>> table_;  // per-knot coefficient vectors
  std::vector<double> angles_;           // kernel angles per knot
};

struct CaratheodoryResult {
  bool ok = false;
  double margin = 0.0;
};

/// Samples Re p on concentric circles |z| = r_i <= 1 - eps and reports the
/// minimum; ok iff the minimum is positive.
CaratheodoryResult caratheodory_check(const DrivingFunction& p, double t, int grid,
                                      double eps = 1.0 / 64.0);

}  // namespace lk
