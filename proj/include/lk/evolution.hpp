#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lk/driving.hpp"
#include "lk/series.hpp"

namespace lk {

/// Some coefficient left the configured safety bound; the truncated model
/// stopped being meaningful, not a property of the underlying flow.
struct BlowUpError : std::runtime_error {
  explicit BlowUpError(const std::string& what) : std::runtime_error(what) {}
};

/// The scale coefficient a0 of a non-normalized evolution collapsed to zero.
struct DegenerateScaleError : std::runtime_error {
  explicit DegenerateScaleError(const std::string& what) : std::runtime_error(what) {}
};

struct EvolutionState {
  double t = 0.0;
  std::vector<cxd> c;        // c_1..c_n
  std::vector<cxd> psibar;   // empty when momenta are not tracked
  std::optional<cxd> a0;     // scale of non-normalized evolutions
};

struct IntegratorMeta {
  double dt = 0.0;
  std::string method = "rk4";
  std::string driving;
};

struct Trajectory {
  std::vector<EvolutionState> samples;
  IntegratorMeta meta;

  int n() const { return samples.empty() ? 0 : static_cast<int>(samples.front().c.size()); }
  bool has_momenta() const { return !samples.empty() && !samples.front().psibar.empty(); }
};

struct IntegrateOptions {
  double blowup_bound = 1e6;
};

/// Coefficient velocities of the normalized flow: builds f from c, forms
/// f (1 - p(e^{-t} f, t)) and reads the coefficients of z^2, z^3, ...
std::vector<cxd> coefficient_velocity(std::span<const cxd> c, const DrivingFunction& p, double t);

/// q(z,t) = p(w,t) + w p'(w,t) expanded in z, with w = e^{-t} f(z).  Its
/// constant term is exactly 1, which cancels the -psibar_j below.
TruncatedTaylor<cxd> momentum_kernel_series(std::span<const cxd> c, const DrivingFunction& p,
                                            double t);

/// psibar_j' = -psibar_j + sum_k psibar_k [z^{k-j}] q  (j < n), psibar_n' = 0.
std::vector<cxd> momentum_velocity(std::span<const cxd> c, std::span<const cxd> psibar,
                                   const DrivingFunction& p, double t);

/// RK4 on the joint (c, psibar) system; momenta are carried only when the
/// initial state has them.  The final step lands exactly on t_end.
Trajectory integrate(const EvolutionState& initial, const DrivingFunction& p, double t_end,
                     double dt, const IntegrateOptions& opts = {});

struct ConservedSeries {
  int k = 0;  // k >= 1: coefficient of z^-k; k <= 0: coefficient of z^{-k} (non-negative part)
  std::vector<cxd> series;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
};

struct ConservedReport {
  std::vector<double> times;
  std::vector<ConservedSeries> entries;  // k = n..1 then 0..-n
  std::string driving;
  double dt = 0.0;

  const ConservedSeries& at_k(int k) const;
};

/// Laurent coefficients of f'(z) psibar(z) along a trajectory with momenta,
/// and their drift relative to the initial sample.
ConservedReport conserved_virasoro(const Trajectory& traj);

struct LoewnerLimit {
  std::vector<cxd> c;
  double tail_estimate = 0.0;  // order-of-magnitude, proportional to e^{-T}
};

/// Integrates from w(z,0) = z to the horizon T and returns c(T), the
/// coefficients of e^T w(z, T).
LoewnerLimit loewner_limit(const DrivingFunction& p, double T, int n, double dt,
                           const IntegrateOptions& opts = {});

enum class Normalization { divide, rescale };

/// Non-normalized transport F' = z F' p with p = u_0 + u_1 z + ...; returns
/// the normalized coefficients c_k = a_k/a_0 (divide) or a_k/a_0^{k+1}
/// (rescale) along with a_0 itself.
Trajectory alternate_evolve(const EvolutionState& initial, const DrivingFunction& controls,
                            double t_end, double dt, Normalization norm,
                            const IntegrateOptions& opts = {});

}  // namespace lk
