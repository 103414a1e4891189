#include "lk/geodesic.hpp"

#include <cmath>

#include "lk/rk4.hpp"

namespace lk {

std::vector<cxd> momenta_from_state(const CotangentState& s) {
  if (s.c.size() != s.psibar.size())
    throw std::invalid_argument("momenta_from_state: length mismatch");
  const int n = static_cast<int>(s.c.size());
  std::vector<cxd> l(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    cxd v = s.psibar[static_cast<size_t>(k - 1)];
    for (int j = 1; j <= n - k; ++j)
      v += static_cast<double>(j + 1) * s.c[static_cast<size_t>(j - 1)] *
           s.psibar[static_cast<size_t>(k + j - 1)];
    l[static_cast<size_t>(k - 1)] = v;
  }
  return l;
}

std::vector<cxd> state_from_momenta(std::span<const cxd> l, std::span<const cxd> c) {
  if (l.size() != c.size()) throw std::invalid_argument("state_from_momenta: length mismatch");
  const int n = static_cast<int>(l.size());
  std::vector<cxd> psibar(static_cast<size_t>(n));
  for (int k = n; k >= 1; --k) {
    cxd v = l[static_cast<size_t>(k - 1)];
    for (int j = 1; j <= n - k; ++j)
      v -= static_cast<double>(j + 1) * c[static_cast<size_t>(j - 1)] *
           psibar[static_cast<size_t>(k + j - 1)];
    psibar[static_cast<size_t>(k - 1)] = v;
  }
  return psibar;
}

HamiltonianRhs hamiltonian_rhs(const CotangentState& s) {
  const int n = static_cast<int>(s.c.size());
  const auto l = momenta_from_state(s);
  HamiltonianRhs rhs;
  rhs.cdot.resize(static_cast<size_t>(n));
  rhs.psidot.assign(static_cast<size_t>(n), cxd(0.0, 0.0));
  for (int k = 1; k <= n; ++k) {
    cxd v = std::conj(l[static_cast<size_t>(k - 1)]);
    for (int j = 1; j <= k - 1; ++j)
      v += static_cast<double>(j + 1) * s.c[static_cast<size_t>(j - 1)] *
           std::conj(l[static_cast<size_t>(k - j - 1)]);
    rhs.cdot[static_cast<size_t>(k - 1)] = v;
  }
  for (int p = 1; p <= n - 1; ++p) {
    cxd v(0.0, 0.0);
    for (int k = 1; k <= n - p; ++k)
      v += l[static_cast<size_t>(k - 1)] * s.psibar[static_cast<size_t>(k + p - 1)];
    rhs.psidot[static_cast<size_t>(p - 1)] = -static_cast<double>(p + 1) * v;
  }
  return rhs;
}

std::vector<cxd> u_flow_rhs(std::span<const cxd> u) {
  const int n = static_cast<int>(u.size());
  std::vector<cxd> udot(static_cast<size_t>(n), cxd(0.0, 0.0));
  for (int k = 1; k <= n; ++k) {
    cxd v(0.0, 0.0);
    for (int j = 1; j <= n - k; ++j)
      v += static_cast<double>(j - k) * std::conj(u[static_cast<size_t>(j - 1)]) *
           u[static_cast<size_t>(j + k - 1)];
    udot[static_cast<size_t>(k - 1)] = v;
  }
  return udot;
}

std::vector<cxd> l_flow_rhs(std::span<const cxd> l) {
  const int n = static_cast<int>(l.size());
  std::vector<cxd> ldot(static_cast<size_t>(n), cxd(0.0, 0.0));
  for (int k = 1; k <= n; ++k) {
    cxd v(0.0, 0.0);
    for (int j = 1; j <= n - k; ++j)
      v += static_cast<double>(j - k) * std::conj(l[static_cast<size_t>(j - 1)]) *
           l[static_cast<size_t>(j + k - 1)];
    ldot[static_cast<size_t>(k - 1)] = v;
  }
  return ldot;
}

double energy(std::span<const cxd> u) {
  double e = 0.0;
  for (const cxd& v : u) e += std::norm(v);
  return e;
}

double lagrangian(std::span<const cxd> u) { return 0.5 * energy(u); }

GeodesicTrajectory integrate_geodesic(const CotangentState& s0, double t_end, double dt,
                                      const IntegrateOptions& opts) {
  if (s0.c.size() != s0.psibar.size())
    throw std::invalid_argument("integrate_geodesic: length mismatch");
  const size_t n = s0.c.size();

  // Joint state: c, psibar, and the redundant velocity channel u.
  std::vector<cxd> y;
  y.insert(y.end(), s0.c.begin(), s0.c.end());
  y.insert(y.end(), s0.psibar.begin(), s0.psibar.end());
  {
    const auto l0 = momenta_from_state(s0);
    for (const cxd& v : l0) y.push_back(std::conj(v));
  }

  auto rhs = [n](double, const std::vector<cxd>& state, std::vector<cxd>& dstate) {
    CotangentState s;
    s.c.assign(state.begin(), state.begin() + static_cast<long>(n));
    s.psibar.assign(state.begin() + static_cast<long>(n), state.begin() + 2 * static_cast<long>(n));
    const auto h = hamiltonian_rhs(s);
    std::copy(h.cdot.begin(), h.cdot.end(), dstate.begin());
    std::copy(h.psidot.begin(), h.psidot.end(), dstate.begin() + static_cast<long>(n));
    std::span<const cxd> u(state.data() + 2 * n, n);
    const auto udot = u_flow_rhs(u);
    std::copy(udot.begin(), udot.end(), dstate.begin() + 2 * static_cast<long>(n));
  };

  GeodesicTrajectory traj;
  traj.dt = dt;
  auto record = [&](double t, const std::vector<cxd>& state) {
    for (const cxd& v : state)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
          std::abs(v) > opts.blowup_bound)
        throw BlowUpError("integrate_geodesic: state left the validity bound");
    GeodesicSample s;
    s.t = t;
    s.state.c.assign(state.begin(), state.begin() + static_cast<long>(n));
    s.state.psibar.assign(state.begin() + static_cast<long>(n),
                          state.begin() + 2 * static_cast<long>(n));
    s.u.assign(state.begin() + 2 * static_cast<long>(n), state.end());
    traj.samples.push_back(std::move(s));
  };

  record(0.0, y);
  rk4_integrate(rhs, 0.0, t_end, dt, {}, y, record);
  return traj;
}

int PolyInS::degree() const {
  for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
    if (a[static_cast<size_t>(d)] != cxd(0.0, 0.0)) return d;
  return 0;
}

cxd PolyInS::eval(double s) const {
  cxd r(0.0, 0.0);
  for (size_t d = a.size(); d-- > 0;) r = r * s + a[d];
  return r;
}

std::vector<PolyInS> constant_u_geodesic(std::span<const cxd> c0, std::span<const cxd> u0) {
  if (c0.size() != u0.size())
    throw std::invalid_argument("constant_u_geodesic: length mismatch");
  const int n = static_cast<int>(c0.size());
  std::vector<PolyInS> c(static_cast<size_t>(n));

  // cdot_k = conj(u0_k) + sum_{j=1}^{k-1} (j+1) c_j(s) conj(u0_{k-j});
  // integrate the triangular system term by term in s.
  for (int k = 1; k <= n; ++k) {
    std::vector<cxd> rate{std::conj(u0[static_cast<size_t>(k - 1)])};
    for (int j = 1; j <= k - 1; ++j) {
      const cxd w = static_cast<double>(j + 1) * std::conj(u0[static_cast<size_t>(k - j - 1)]);
      const auto& cj = c[static_cast<size_t>(j - 1)].a;
      if (rate.size() < cj.size()) rate.resize(cj.size(), cxd(0.0, 0.0));
      for (size_t d = 0; d < cj.size(); ++d) rate[d] += w * cj[d];
    }
    PolyInS ck;
    ck.a.assign(rate.size() + 1, cxd(0.0, 0.0));
    ck.a[0] = c0[static_cast<size_t>(k - 1)];
    for (size_t d = 0; d < rate.size(); ++d)
      ck.a[d + 1] = rate[d] / static_cast<double>(d + 1);
    c[static_cast<size_t>(k - 1)] = std::move(ck);
  }
  return c;
}

}  // namespace lk
