#include "lk/evolution.hpp"

#include <cmath>
#include <sstream>

#include "lk/rk4.hpp"

namespace lk {

namespace {

TruncatedTaylor<cxd> map_from_coeffs(std::span<const cxd> c, int order) {
  TruncatedTaylor<cxd> f(order);
  f.set(1, 1.0);
  for (size_t k = 0; k < c.size() && static_cast<int>(k) + 2 <= order; ++k)
    f.set(static_cast<int>(k) + 2, c[k]);
  return f;
}

void check_blowup(std::span<const cxd> c, double t, double bound) {
  for (const cxd& v : c) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > bound) {
      std::ostringstream os;
      os << "integrate: coefficient left the validity bound " << bound << " at t = " << t;
      throw BlowUpError(os.str());
    }
  }
}

}  // namespace

std::vector<cxd> coefficient_velocity(std::span<const cxd> c, const DrivingFunction& p, double t) {
  const int n = static_cast<int>(c.size());
  const int order = n + 1;
  const auto f = map_from_coeffs(c, order);
  const auto w = scale(f, cxd(std::exp(-t), 0.0));
  const auto pw = compose(p.series(t, order), w);
  auto one = TruncatedTaylor<cxd>::constant(1.0, order);
  const auto fdot = mul(f, sub(one, pw));
  std::vector<cxd> cdot(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) cdot[static_cast<size_t>(k - 1)] = fdot[k + 1];
  return cdot;
}

TruncatedTaylor<cxd> momentum_kernel_series(std::span<const cxd> c, const DrivingFunction& p,
                                            double t) {
  const int n = static_cast<int>(c.size());
  const int order = n + 1;
  const auto f = map_from_coeffs(c, order);
  const auto w = scale(f, cxd(std::exp(-t), 0.0));
  const auto ps = p.series(t, order);
  const auto q = add(compose(ps, w).truncated(order - 1),
                     mul(w, compose(derivative(ps), w)));
  return q;
}

std::vector<cxd> momentum_velocity(std::span<const cxd> c, std::span<const cxd> psibar,
                                   const DrivingFunction& p, double t) {
  if (c.size() != psibar.size())
    throw std::invalid_argument("momentum_velocity: length mismatch");
  const int n = static_cast<int>(c.size());
  const auto q = momentum_kernel_series(c, p, t);
  std::vector<cxd> psidot(static_cast<size_t>(n), cxd(0.0, 0.0));
  for (int j = 1; j <= n - 1; ++j) {
    cxd s = -psibar[static_cast<size_t>(j - 1)];
    for (int k = j; k <= n; ++k) s += psibar[static_cast<size_t>(k - 1)] * q[k - j];
    psidot[static_cast<size_t>(j - 1)] = s;
  }
  return psidot;
}

Trajectory integrate(const EvolutionState& initial, const DrivingFunction& p, double t_end,
                     double dt, const IntegrateOptions& opts) {
  const size_t n = initial.c.size();
  const bool momenta = !initial.psibar.empty();
  if (momenta && initial.psibar.size() != n)
    throw std::invalid_argument("integrate: momenta length must match c");
  if (!(t_end > initial.t)) throw std::invalid_argument("integrate: t_end must exceed initial t");

  std::vector<cxd> y(initial.c.begin(), initial.c.end());
  if (momenta) y.insert(y.end(), initial.psibar.begin(), initial.psibar.end());

  Trajectory traj;
  traj.meta.dt = dt;
  traj.meta.driving = p.describe();
  traj.samples.push_back(initial);

  auto rhs = [&](double t, const std::vector<cxd>& state, std::vector<cxd>& dstate) {
    std::span<const cxd> cs(state.data(), n);
    const auto cdot = coefficient_velocity(cs, p, t);
    std::copy(cdot.begin(), cdot.end(), dstate.begin());
    if (momenta) {
      std::span<const cxd> pb(state.data() + n, n);
      const auto pdot = momentum_velocity(cs, pb, p, t);
      std::copy(pdot.begin(), pdot.end(), dstate.begin() + static_cast<long>(n));
    }
  };

  auto observe = [&](double t, const std::vector<cxd>& state) {
    check_blowup(std::span<const cxd>(state.data(), n), t, opts.blowup_bound);
    EvolutionState s;
    s.t = t;
    s.c.assign(state.begin(), state.begin() + static_cast<long>(n));
    if (momenta) s.psibar.assign(state.begin() + static_cast<long>(n), state.end());
    traj.samples.push_back(std::move(s));
  };

  rk4_integrate(rhs, initial.t, t_end, dt, p.breakpoints(), y, observe);
  return traj;
}

const ConservedSeries& ConservedReport::at_k(int k) const {
  for (const auto& e : entries)
    if (e.k == k) return e;
  throw std::out_of_range("ConservedReport: no entry for requested k");
}

ConservedReport conserved_virasoro(const Trajectory& traj) {
  if (!traj.has_momenta())
    throw std::invalid_argument("conserved_virasoro: trajectory carries no momenta");
  const int n = traj.n();

  ConservedReport report;
  report.dt = traj.meta.dt;
  report.driving = traj.meta.driving;
  for (int k = n; k >= 1; --k) report.entries.push_back({k, {}, 0.0, 0.0});
  for (int k = 0; k <= n; ++k) report.entries.push_back({-k, {}, 0.0, 0.0});

  for (const auto& s : traj.samples) {
    report.times.push_back(s.t);
    LaurentWindow<cxd> fp(n), pb(n);
    fp.set(0, 1.0);
    for (int j = 1; j <= n; ++j)
      fp.set(j, static_cast<double>(j + 1) * s.c[static_cast<size_t>(j - 1)]);
    for (int k = 1; k <= n; ++k) pb.set(-k, s.psibar[static_cast<size_t>(k - 1)]);
    const auto L = laurent_mul(fp, pb);
    for (auto& e : report.entries) e.series.push_back(L.coeff(-e.k));
  }

  for (auto& e : report.entries) {
    const cxd ref = e.series.front();
    double scale_ = std::abs(ref);
    for (const cxd& v : e.series) {
      e.max_abs_drift = std::max(e.max_abs_drift, std::abs(v - ref));
      scale_ = std::max(scale_, std::abs(v));
    }
    e.max_rel_drift =
        e.max_abs_drift == 0.0 ? 0.0 : e.max_abs_drift / std::max(scale_, 1e-300);
  }
  return report;
}

LoewnerLimit loewner_limit(const DrivingFunction& p, double T, int n, double dt,
                           const IntegrateOptions& opts) {
  if (!(T > 0)) throw std::invalid_argument("loewner_limit: horizon must be positive");
  EvolutionState init;
  init.c.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  const auto traj = integrate(init, p, T, dt, opts);

  LoewnerLimit out;
  out.c = traj.samples.back().c;
  double pmax = 0.0;
  for (const cxd& v : p.series(T).coeffs()) pmax = std::max(pmax, std::abs(v));
  double cmax = 0.0;
  for (const cxd& v : out.c) cmax = std::max(cmax, std::abs(v));
  // Coefficient velocities carry e^{-t} factors, so the remaining motion
  // past T is of this order.
  out.tail_estimate = std::exp(-T) * n * (1.0 + pmax) * (1.0 + cmax);
  return out;
}

Trajectory alternate_evolve(const EvolutionState& initial, const DrivingFunction& controls,
                            double t_end, double dt, Normalization norm,
                            const IntegrateOptions& opts) {
  if (!initial.a0.has_value() || *initial.a0 == cxd(0.0, 0.0))
    throw std::invalid_argument("alternate_evolve: initial state needs a nonzero a0");
  const int n = static_cast<int>(initial.c.size());
  if (!(t_end > initial.t))
    throw std::invalid_argument("alternate_evolve: t_end must exceed initial t");

  // State holds the raw coefficients a_0..a_n of F = a_0 z + a_1 z^2 + ...
  // The stored c in `initial` are normalized; recover a_k from the chosen map.
  std::vector<cxd> y(static_cast<size_t>(n) + 1);
  y[0] = *initial.a0;
  for (int k = 1; k <= n; ++k) {
    cxd factor = *initial.a0;
    if (norm == Normalization::rescale)
      for (int j = 0; j < k; ++j) factor *= *initial.a0;
    y[static_cast<size_t>(k)] = initial.c[static_cast<size_t>(k - 1)] * factor;
  }

  auto rhs = [&](double t, const std::vector<cxd>& a, std::vector<cxd>& adot) {
    const auto u = controls.series(t, n);
    for (int k = 0; k <= n; ++k) {
      cxd s(0.0, 0.0);
      for (int j = 0; j <= k; ++j)
        s += static_cast<double>(j + 1) * a[static_cast<size_t>(j)] * u[k - j];
      adot[static_cast<size_t>(k)] = s;
    }
  };

  Trajectory traj;
  traj.meta.dt = dt;
  traj.meta.driving = controls.describe();

  auto record = [&](double t, const std::vector<cxd>& a) {
    if (std::abs(a[0]) < 1e-120)
      throw DegenerateScaleError("alternate_evolve: scale coefficient a0 collapsed to zero");
    EvolutionState s;
    s.t = t;
    s.a0 = a[0];
    s.c.resize(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
      cxd denom = a[0];
      if (norm == Normalization::rescale)
        for (int j = 0; j < k; ++j) denom *= a[0];
      s.c[static_cast<size_t>(k - 1)] = a[static_cast<size_t>(k)] / denom;
    }
    check_blowup(s.c, t, opts.blowup_bound);
    traj.samples.push_back(std::move(s));
  };

  record(initial.t, y);
  rk4_integrate(rhs, initial.t, t_end, dt, controls.breakpoints(), y, record);
  return traj;
}

}  // namespace lk
