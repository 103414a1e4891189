#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lk/algebra.hpp"
#include "lk/geodesic.hpp"

using namespace lk;

namespace {

std::vector<cxd> random_vec(std::mt19937& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cxd> v(static_cast<size_t>(n));
  for (auto& x : v) x = scale * cxd(u(rng), u(rng));
  return v;
}

}  // namespace

TEST_CASE("momenta map: hand values and triangular inverse") {
  CotangentState s;
  s.c = {cxd(0.0, 0.0), cxd(0.0, 0.0)};
  s.psibar = {cxd(1.5, -0.5), cxd(0.25, 1.0)};
  CHECK(momenta_from_state(s) == s.psibar);

  s.c = {cxd(0.3, 0.1), cxd(0.0, 0.0)};
  auto l = momenta_from_state(s);
  CHECK(l[0] == s.psibar[0] + 2.0 * s.c[0] * s.psibar[1]);
  CHECK(l[1] == s.psibar[1]);

  std::mt19937 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    CotangentState t;
    t.c = random_vec(rng, 6, 0.3);
    t.psibar = random_vec(rng, 6);
    auto lm = momenta_from_state(t);
    auto back = state_from_momenta(lm, t.c);
    for (size_t i = 0; i < back.size(); ++i) CHECK(std::abs(back[i] - t.psibar[i]) < 1e-13);
  }
}

TEST_CASE("hamiltonian_rhs: printed structure") {
  std::mt19937 rng(7);
  CotangentState s;
  s.c = random_vec(rng, 5, 0.3);
  s.psibar = random_vec(rng, 5);
  auto rhs = hamiltonian_rhs(s);
  CHECK(rhs.psidot[4] == cxd(0.0, 0.0));  // top momentum never moves

  // c = 0, psibar = e1: velocity e1, momenta frozen.
  CotangentState e1;
  e1.c.assign(4, cxd(0.0, 0.0));
  e1.psibar.assign(4, cxd(0.0, 0.0));
  e1.psibar[0] = 1.0;
  auto r = hamiltonian_rhs(e1);
  CHECK(r.cdot[0] == cxd(1.0, 0.0));
  for (int k = 1; k < 4; ++k) CHECK(r.cdot[static_cast<size_t>(k)] == cxd(0.0, 0.0));
  for (const auto& v : r.psidot) CHECK(v == cxd(0.0, 0.0));
}

TEST_CASE("u-flow: small-n structure") {
  // n = 2: both velocities frozen.
  std::vector<cxd> u2 = {cxd(0.4, 0.2), cxd(-0.3, 0.9)};
  for (const cxd& v : u_flow_rhs(u2)) CHECK(v == cxd(0.0, 0.0));

  // n = 3: udot_1 = conj(u2) u3, udot_2 = -conj(u1) u3, udot_3 = 0.
  std::vector<cxd> u3 = {cxd(0.4, 0.2), cxd(-0.3, 0.9), cxd(0.7, -0.1)};
  auto ud = u_flow_rhs(u3);
  CHECK(ud[0] == std::conj(u3[1]) * u3[2]);
  CHECK(ud[1] == -std::conj(u3[0]) * u3[2]);
  CHECK(ud[2] == cxd(0.0, 0.0));

  std::vector<cxd> zero(5, cxd(0.0, 0.0));
  for (const cxd& v : u_flow_rhs(zero)) CHECK(v == cxd(0.0, 0.0));
}

TEST_CASE("u-flow is the conjugate of the momentum flow, bitwise") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    auto u = random_vec(rng, 7);
    std::vector<cxd> ubar(u.size());
    for (size_t i = 0; i < u.size(); ++i) ubar[i] = std::conj(u[i]);
    const auto lhs = u_flow_rhs(u);
    const auto rhs = l_flow_rhs(ubar);
    for (size_t i = 0; i < u.size(); ++i) CHECK(lhs[i] == std::conj(rhs[i]));
  }
}

TEST_CASE("u-flow conserves the energy: pairwise skew symmetry") {
  std::mt19937 rng(29);
  for (int n = 2; n <= 6; ++n) {
    auto u = random_vec(rng, n);
    auto ud = u_flow_rhs(u);
    cxd s(0.0, 0.0);
    for (int k = 0; k < n; ++k) s += std::conj(u[static_cast<size_t>(k)]) * ud[static_cast<size_t>(k)];
    CHECK(std::abs(s) < 1e-14);
  }
}

TEST_CASE("integrate_geodesic: n = 1 straight line and conserved energy") {
  CotangentState s0;
  s0.c = {cxd(0.2, -0.1)};
  s0.psibar = {cxd(0.5, 0.7)};
  auto traj = integrate_geodesic(s0, 2.0, 1e-3);
  const auto& last = traj.samples.back();
  const cxd expect = s0.c[0] + std::conj(s0.psibar[0]) * 2.0;
  CHECK(std::abs(last.state.c[0] - expect) < 1e-12);
  CHECK(last.state.psibar[0] == s0.psibar[0]);

  std::mt19937 rng(37);
  CotangentState s1;
  s1.c = random_vec(rng, 6, 0.2);
  s1.psibar = random_vec(rng, 6, 0.8);
  auto t2 = integrate_geodesic(s1, 3.0, 1e-3);
  const double e0 = energy(t2.samples.front().u);
  double maxdrift = 0.0, maxmismatch = 0.0, maxbase = 0.0;
  for (const auto& smp : t2.samples) {
    maxdrift = std::max(maxdrift, std::abs(energy(smp.u) - e0));
    const auto l = momenta_from_state(smp.state);
    for (size_t i = 0; i < l.size(); ++i)
      maxmismatch = std::max(maxmismatch, std::abs(std::conj(smp.u[i]) - l[i]));
  }
  CHECK(maxdrift <= 1e-10 * e0);
  CHECK(maxmismatch < 1e-9);

  // The base-change route: u_from_cdot applied to the numerical velocity
  // reproduces the propagated u channel.
  for (size_t idx : {size_t(0), t2.samples.size() / 2, t2.samples.size() - 1}) {
    const auto& smp = t2.samples[idx];
    auto rhs = hamiltonian_rhs(smp.state);
    auto u = u_from_cdot<cxd>(rhs.cdot, smp.state.c);
    for (size_t i = 0; i < u.size(); ++i)
      maxbase = std::max(maxbase, std::abs(u[i] - smp.u[i]));
  }
  CHECK(maxbase < 1e-9);
}

TEST_CASE("constant_u_geodesic: printed polynomials at c0 = 0") {
  std::mt19937 rng(41);
  auto u0 = random_vec(rng, 4);
  std::vector<cxd> c0(4, cxd(0.0, 0.0));
  auto polys = constant_u_geodesic(c0, u0);

  // c1(s) = conj(u1) s; c2(s) = conj(u1)^2 s^2 + conj(u2) s.
  CHECK(polys[0].a.size() == 2);
  CHECK(polys[0].a[0] == cxd(0.0, 0.0));
  CHECK(polys[0].a[1] == std::conj(u0[0]));
  CHECK(polys[1].a[1] == std::conj(u0[1]));
  CHECK(polys[1].a[2] == std::conj(u0[0]) * std::conj(u0[0]));

  // Degree bound: deg c_n = n exactly when conj(u1) != 0.
  for (int k = 1; k <= 4; ++k) CHECK(polys[static_cast<size_t>(k - 1)].degree() == k);
}

TEST_CASE("constant_u_geodesic: numeric oracle at s = 1") {
  std::mt19937 rng(43);
  const int n = 6;
  auto u0 = random_vec(rng, n, 0.7);
  auto c0 = random_vec(rng, n, 0.3);
  auto polys = constant_u_geodesic(c0, u0);

  std::vector<cxd> ubar(u0.size());
  for (size_t i = 0; i < u0.size(); ++i) ubar[i] = std::conj(u0[i]);
  std::vector<cxd> y = c0;
  const int steps = 1000;
  const double dt = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    // RK4 on the frozen field cdot = sum conj(u0_k) L_k(c).
    auto f = [&](const std::vector<cxd>& c) { return cdot_from_u<cxd>(ubar, c); };
    auto k1 = f(y);
    std::vector<cxd> t1(y.size()), t2(y.size()), t3(y.size());
    for (size_t i = 0; i < y.size(); ++i) t1[i] = y[i] + 0.5 * dt * k1[i];
    auto k2 = f(t1);
    for (size_t i = 0; i < y.size(); ++i) t2[i] = y[i] + 0.5 * dt * k2[i];
    auto k3 = f(t2);
    for (size_t i = 0; i < y.size(); ++i) t3[i] = y[i] + dt * k3[i];
    auto k4 = f(t3);
    for (size_t i = 0; i < y.size(); ++i)
      y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  for (int k = 1; k <= n; ++k)
    CHECK(std::abs(polys[static_cast<size_t>(k - 1)].eval(1.0) - y[static_cast<size_t>(k - 1)]) <
          1e-8);
}

TEST_CASE("lagrangian values") {
  std::vector<cxd> zero(3, cxd(0.0, 0.0));
  CHECK(lagrangian(zero) == 0.0);
  std::vector<cxd> e1 = {cxd(1.0, 0.0), cxd(0.0, 0.0)};
  CHECK(lagrangian(e1) == 0.5);
  std::vector<cxd> v = {cxd(3.0, 0.0), cxd(4.0, 0.0)};
  CHECK(lagrangian(v) == 12.5);
  CHECK(energy(v) == 25.0);
}
