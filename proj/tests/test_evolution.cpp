#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lk/evolution.hpp"
#include "lk/io.hpp"

using namespace lk;

namespace {

std::vector<cxd> random_state(std::mt19937& rng, int n, double scale = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cxd> c(static_cast<size_t>(n));
  for (auto& v : c) v = scale * cxd(u(rng), u(rng));
  return c;
}

double max_err(std::span<const cxd> a, std::span<const cxd> b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("caratheodory_check margins") {
  auto one = DrivingFunction::constant({cxd(1.0, 0.0)});
  auto r1 = caratheodory_check(one, 0.0, 64);
  CHECK(r1.ok);
  CHECK(r1.margin == doctest::Approx(1.0));

  auto edge = DrivingFunction::constant({cxd(1.0, 0.0), cxd(1.0, 0.0)});
  auto r2 = caratheodory_check(edge, 0.0, 64);
  CHECK(r2.ok);
  CHECK(r2.margin == doctest::Approx(1.0 / 64).epsilon(1e-9));
  auto r2tight = caratheodory_check(edge, 0.0, 64, 1.0 / 1024);
  CHECK(r2tight.margin < r2.margin);
  CHECK(r2tight.ok);

  auto bad = DrivingFunction::constant({cxd(1.0, 0.0), cxd(3.0, 0.0)});
  auto r3 = caratheodory_check(bad, 0.0, 64);
  CHECK_FALSE(r3.ok);
  CHECK(r3.margin < 0.0);

  // The kernel evaluates through its closed form and stays admissible.
  auto ker = DrivingFunction::kernel(0.7, 8);
  auto r4 = caratheodory_check(ker, 0.0, 48, 1.0 / 256);
  CHECK(r4.ok);
}

TEST_CASE("kernel_series expansion") {
  auto p0 = kernel_series(0.0, 5);
  CHECK(p0[0] == cxd(1.0, 0.0));
  for (int k = 1; k <= 5; ++k) CHECK(p0[k] == cxd(2.0, 0.0));

  auto p = kernel_series(1.3, 7);
  CHECK(p[0] == cxd(1.0, 0.0));
  for (int k = 1; k <= 7; ++k) CHECK(std::abs(p[k]) == doctest::Approx(2.0));
}

TEST_CASE("coefficient_velocity: printed low-order formulas") {
  std::mt19937 rng(3);
  const int n = 5;

  auto frozen = DrivingFunction::constant({cxd(1.0, 0.0)});
  auto c = random_state(rng, n);
  for (const cxd& v : coefficient_velocity(c, frozen, 0.37)) CHECK(v == cxd(0.0, 0.0));

  const cxd p1(0.4, -0.3), p2(-0.2, 0.6);
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), p1, p2});
  for (double t : {0.0, 0.8}) {
    auto cdot = coefficient_velocity(c, driver, t);
    const double e = std::exp(-t), e2 = std::exp(-2.0 * t);
    CHECK(std::abs(cdot[0] - (-e * p1)) < 1e-14);
    CHECK(std::abs(cdot[1] - (-2.0 * e * p1 * c[0] - e2 * p2)) < 1e-14);
    // cdot_3 = -e p1 (2 c2 + c1^2) - 3 e^2 p2 c1 - e^3 p3, with p3 = 0 here.
    CHECK(std::abs(cdot[2] - (-e * p1 * (2.0 * c[1] + c[0] * c[0]) - 3.0 * e2 * p2 * c[0])) <
          1e-14);
  }
}

TEST_CASE("momentum_velocity: n = 3 printed system and top-slot freeze") {
  std::mt19937 rng(5);
  const cxd p1(0.25, 0.15), p2(-0.4, 0.1);
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), p1, p2});
  auto c = random_state(rng, 3);
  auto pb = random_state(rng, 3, 1.0);
  const double t = 0.6, e = std::exp(-t), e2 = std::exp(-2.0 * t);

  auto pd = momentum_velocity(c, pb, driver, t);
  CHECK(pd[2] == cxd(0.0, 0.0));
  CHECK(std::abs(pd[1] - 2.0 * e * p1 * pb[2]) < 1e-14);
  CHECK(std::abs(pd[0] - (2.0 * e * p1 * pb[1] + (2.0 * e * p1 * c[0] + 3.0 * e2 * p2) * pb[2])) <
        1e-14);

  // q(z,t) = p(w) + w p'(w) has constant term exactly 1 for any state.
  for (int rep = 0; rep < 10; ++rep) {
    auto cc = random_state(rng, 6);
    auto q = momentum_kernel_series(cc, driver, 0.31 * rep);
    CHECK(q[0] == cxd(1.0, 0.0));
  }

  // Momenta supported only on psibar_1 never move.
  std::vector<cxd> e1 = {cxd(1.0, 0.0), cxd(0.0, 0.0), cxd(0.0, 0.0)};
  auto pd1 = momentum_velocity(c, e1, driver, t);
  for (const cxd& v : pd1) CHECK(v == cxd(0.0, 0.0));
}

TEST_CASE("integrate: frozen driver keeps the state fixed exactly") {
  auto frozen = DrivingFunction::constant({cxd(1.0, 0.0)});
  EvolutionState init;
  init.c.assign(4, cxd(0.0, 0.0));
  init.psibar = {cxd(1, 0), cxd(0, 2), cxd(-1, 0), cxd(0.5, 0.5)};
  auto traj = integrate(init, frozen, 1.0, 1e-2);
  for (const auto& s : traj.samples) {
    for (const cxd& v : s.c) CHECK(v == cxd(0.0, 0.0));
    for (size_t k = 0; k < 4; ++k) CHECK(s.psibar[k] == init.psibar[k]);
  }
}

TEST_CASE("integrate: closed-form solution for p = 1 + p1 z") {
  const double p1 = 0.5;
  const int n = 6;
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), cxd(p1, 0.0)});
  EvolutionState init;
  init.c.assign(n, cxd(0.0, 0.0));

  auto run = [&](double dt) {
    auto traj = integrate(init, driver, 3.0, dt);
    const auto& c = traj.samples.back().c;
    const double beta = p1 * (1.0 - std::exp(-3.0));
    std::vector<cxd> expect(n);
    cxd pw(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
      pw *= cxd(-beta, 0.0);
      expect[static_cast<size_t>(k)] = pw;
    }
    return max_err(c, expect);
  };

  CHECK(run(1e-3) < 1e-10);
  // Fourth-order convergence, measured where truncation error dominates noise.
  const double e1 = run(8e-3), e2 = run(4e-3);
  CHECK(e1 / e2 > 10.0);
  CHECK(e1 / e2 < 26.0);

  // c1(t) = p1 (e^{-t} - 1) along the whole run.
  auto traj = integrate(init, driver, 3.0, 1e-3);
  for (size_t i = 0; i < traj.samples.size(); i += 500) {
    const auto& s = traj.samples[i];
    CHECK(std::abs(s.c[0] - cxd(p1 * (std::exp(-s.t) - 1.0), 0.0)) < 1e-10);
  }
}

TEST_CASE("integrate: blow-up guard rejects the step") {
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), cxd(0.5, 0.0)});
  EvolutionState init;
  init.c.assign(4, cxd(0.0, 0.0));
  IntegrateOptions opts;
  opts.blowup_bound = 0.1;
  CHECK_THROWS_AS(integrate(init, driver, 5.0, 1e-2, opts), BlowUpError);
}

TEST_CASE("conserved_virasoro: frozen driver and initial values") {
  auto frozen = DrivingFunction::constant({cxd(1.0, 0.0)});
  EvolutionState init;
  init.c.assign(3, cxd(0.0, 0.0));
  init.psibar = {cxd(0.7, -0.2), cxd(0.1, 0.4), cxd(-0.3, 0.0)};
  auto rep = conserved_virasoro(integrate(init, frozen, 1.0, 1e-2));
  for (const auto& e : rep.entries) {
    CHECK(e.max_abs_drift == 0.0);
    CHECK(e.max_rel_drift == 0.0);
  }
  // L_1 at t = 0 with c = 0 is psibar_1(0).
  CHECK(rep.at_k(1).series.front() == init.psibar[0]);

  EvolutionState no_momenta;
  no_momenta.c.assign(3, cxd(0.0, 0.0));
  auto traj = integrate(no_momenta, frozen, 0.5, 1e-2);
  CHECK_THROWS_AS(conserved_virasoro(traj), std::invalid_argument);
}

TEST_CASE("conserved_virasoro: RK4 drift scales as dt^4 under a live driver") {
  const int n = 5;
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), cxd(0.5, 0.0)});
  EvolutionState init;
  init.c.assign(n, cxd(0.0, 0.0));
  init.psibar.assign(n, cxd(0.0, 0.0));
  init.psibar.back() = 1.0;  // top-slot momenta excite the full cascade

  auto drift = [&](double dt) {
    auto rep = conserved_virasoro(integrate(init, driver, 2.0, dt));
    double d = 0.0;
    for (const auto& e : rep.entries)
      if (e.k >= 1) d = std::max(d, e.max_abs_drift);
    return d;
  };

  const double d1 = drift(8e-3), d2 = drift(4e-3);
  CHECK(d1 > 0.0);
  CHECK(d1 / d2 > 10.0);
  CHECK(d1 / d2 < 26.0);

  // With momenta e_1 the cascade is frozen and every L_k is exact.
  EvolutionState e1 = init;
  e1.psibar.assign(n, cxd(0.0, 0.0));
  e1.psibar.front() = 1.0;
  auto rep = conserved_virasoro(integrate(e1, driver, 2.0, 1e-2));
  for (const auto& e : rep.entries)
    if (e.k >= 1) CHECK(e.max_abs_drift == 0.0);
}

TEST_CASE("loewner_limit") {
  auto frozen = DrivingFunction::constant({cxd(1.0, 0.0)});
  auto lim = loewner_limit(frozen, 5.0, 4, 1e-2);
  for (const cxd& v : lim.c) CHECK(v == cxd(0.0, 0.0));

  auto ker = DrivingFunction::kernel(0.0, 6);
  auto lim2 = loewner_limit(ker, 0.1, 6, 1e-4);
  CHECK(std::abs(lim2.c[0] - cxd(2.0 * (std::exp(-0.1) - 1.0), 0.0)) < 1e-10);

  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), cxd(0.5, 0.0)});
  auto lim3 = loewner_limit(driver, 20.0, 6, 1e-3);
  for (int k = 1; k <= 6; ++k)
    CHECK(std::abs(lim3.c[static_cast<size_t>(k - 1)] - std::pow(cxd(-0.5, 0.0), k)) < 1e-6);
  CHECK(lim3.tail_estimate < 1e-6);
  CHECK(lim3.tail_estimate > 0.0);
}

TEST_CASE("alternate_evolve: diagonal controls and normalization maps") {
  const int n = 4;
  auto diag = DrivingFunction::constant({cxd(1.0, 0.0)}, true);  // p = u0 = 1
  EvolutionState init;
  init.a0 = cxd(1.0, 0.0);
  init.c = {cxd(0.3, 0.1), cxd(-0.2, 0.0), cxd(0.05, -0.1), cxd(0.0, 0.2)};

  // rescale: c_k = a_k / a0^{k+1} is constant when adot_k = (k+1) a_k.
  auto tr = alternate_evolve(init, diag, 1.0, 1e-3, Normalization::rescale);
  CHECK(std::abs(*tr.samples.back().a0 - cxd(std::exp(1.0), 0.0)) < 1e-9);
  CHECK(max_err(tr.samples.back().c, init.c) < 1e-9);

  // divide: c_k = a_k / a0 grows like e^{k t}.
  auto td = alternate_evolve(init, diag, 1.0, 1e-3, Normalization::divide);
  for (int k = 1; k <= n; ++k) {
    const cxd expect = init.c[static_cast<size_t>(k - 1)] * std::exp(static_cast<double>(k));
    CHECK(std::abs(td.samples.back().c[static_cast<size_t>(k - 1)] - expect) < 1e-6);
  }

  auto zero = DrivingFunction::constant({cxd(0.0, 0.0)}, true);
  auto tz = alternate_evolve(init, zero, 1.0, 1e-2, Normalization::divide);
  CHECK(max_err(tz.samples.back().c, init.c) == 0.0);
  CHECK(*tz.samples.back().a0 == *init.a0);

  auto collapse = DrivingFunction::constant({cxd(-300.0, 0.0)}, true);
  CHECK_THROWS_AS(alternate_evolve(init, collapse, 1.0, 1e-3, Normalization::divide),
                  DegenerateScaleError);
}

TEST_CASE("transition identity: the chain composed with the flow is the identity") {
  // The non-normalized transport with u0 = 1 grows the chain F(.,t) whose
  // transition maps solve the coefficient flow with the same driver.
  const int n = 8;
  const double T = 1.0, dt = 1e-3;
  std::vector<cxd> pc = {cxd(1.0, 0.0), cxd(0.5, 0.0), cxd(0.2, 0.1), cxd(-0.1, 0.05)};
  auto driver = DrivingFunction::constant(pc);

  EvolutionState ode0;
  ode0.c.assign(n, cxd(0.0, 0.0));
  auto w_traj = integrate(ode0, driver, T, dt);

  EvolutionState chain0;
  chain0.a0 = cxd(1.0, 0.0);
  chain0.c.assign(n, cxd(0.0, 0.0));
  auto chain = alternate_evolve(chain0, driver, T, dt, Normalization::divide);

  // Build w(z,T) = e^{-T} z (1 + sum c_k z^k) and F(z,T) = a0 z (1 + ...).
  TruncatedTaylor<cxd> w(n + 1), F(n + 1);
  w.set(1, std::exp(-T));
  F.set(1, *chain.samples.back().a0);
  for (int k = 1; k <= n; ++k) {
    w.set(k + 1, std::exp(-T) * w_traj.samples.back().c[static_cast<size_t>(k - 1)]);
    F.set(k + 1, *chain.samples.back().a0 * chain.samples.back().c[static_cast<size_t>(k - 1)]);
  }
  auto composed = compose(F, w);
  CHECK(std::abs(composed[0]) < 1e-12);
  CHECK(std::abs(composed[1] - cxd(1.0, 0.0)) < 1e-8);
  for (int m = 2; m <= n + 1; ++m) CHECK(std::abs(composed[m]) < 1e-7);
}

TEST_CASE("trajectory CSV: schema and determinism") {
  auto driver = DrivingFunction::constant({cxd(1.0, 0.0), cxd(0.5, 0.0)});
  EvolutionState init;
  init.c.assign(2, cxd(0.0, 0.0));
  init.psibar = {cxd(1.0, 0.0), cxd(0.0, 0.0)};
  auto traj = integrate(init, driver, 0.1, 1e-2);
  const std::string csv1 = trajectory_csv(traj);
  const std::string csv2 = trajectory_csv(integrate(init, driver, 0.1, 1e-2));
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, csv1.find('\n')) ==
        "t,re_c1,im_c1,re_c2,im_c2,re_psibar1,im_psibar1,re_psibar2,im_psibar2");
  CHECK(csv1.back() == '\n');
}

TEST_CASE("driving function JSON parsing and validation") {
  auto d = DrivingFunction::from_json({{"kind", "constant"}, {"p", {1.0, 0.5}}});
  CHECK(d.order() == 1);
  CHECK(d.series(0.0)[1] == cxd(0.5, 0.0));

  CHECK_THROWS_AS(DrivingFunction::from_json({{"kind", "constant"}, {"p", {2.0, 0.5}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DrivingFunction::from_json({{"kind", "constant"}, {"p", {1.0}}, {"bogus", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DrivingFunction::from_json({{"kind", "nope"}}), std::invalid_argument);

  auto alt = DrivingFunction::from_json(
      {{"kind", "constant"}, {"p", {2.0, 0.5}}, {"alternate", true}});
  CHECK(alt.alternate());

  auto pw = DrivingFunction::from_json(
      {{"kind", "piecewise"},
       {"times", {0.0, 1.0}},
       {"p", {{1.0, 0.5}, {1.0, 0.25}}}});
  CHECK(pw.series(0.5)[1] == cxd(0.5, 0.0));
  CHECK(pw.series(1.5)[1] == cxd(0.25, 0.0));
  CHECK(pw.breakpoints().size() == 2);

  auto ker = DrivingFunction::from_json({{"kind", "kernel"}, {"order", 4}, {"u", 0.0}});
  CHECK(ker.series(0.0)[3] == cxd(2.0, 0.0));
}
