#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "lk/polynomial.hpp"
#include "lk/rational.hpp"
#include "lk/series.hpp"

using lk::LaurentWindow;
using lk::RationalComplex;
using lk::TruncatedTaylor;
using cx = std::complex<double>;

namespace {

TruncatedTaylor<cx> series(std::vector<cx> v) { return TruncatedTaylor<cx>(std::move(v)); }

RationalComplex random_rc(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return RationalComplex(lk::Rational(num(rng), den(rng)), lk::Rational(num(rng), den(rng)));
}

TruncatedTaylor<RationalComplex> random_rc_series(std::mt19937& rng, int order) {
  TruncatedTaylor<RationalComplex> s(order);
  for (int k = 0; k <= order; ++k) s.set(k, random_rc(rng));
  return s;
}

}  // namespace

TEST_CASE("add: coefficient-wise with min-order truncation") {
  auto a = series({1, 1});
  auto b = series({1, -1});
  auto s = add(a, b);
  CHECK(s.order() == 1);
  CHECK(s[0] == cx(2));
  CHECK(s[1] == cx(0));

  auto zero = TruncatedTaylor<cx>(3);
  auto c = series({2, 5, -1, 7});
  CHECK(add(zero, c) == c);

  auto d = add(series({1, 2}), series({3, 4}));
  CHECK(d[0] == cx(4));
  CHECK(d[1] == cx(6));

  CHECK(add(series({1, 2, 3}), series({1, 1})).order() == 1);
}

TEST_CASE("mul: Cauchy product") {
  auto p = mul(series({1, 1, 0}), series({1, -1, 0}));
  CHECK(p.order() == 2);
  CHECK(p[0] == cx(1));
  CHECK(p[1] == cx(0));
  CHECK(p[2] == cx(-1));

  auto a = series({4, -2, 9});
  CHECK(mul(a, TruncatedTaylor<cx>::constant(1, 2)) == a);

  auto sq = mul(series({1, 1, 1}), series({1, 1, 1}));
  CHECK(sq[0] == cx(1));
  CHECK(sq[1] == cx(2));
  CHECK(sq[2] == cx(3));
}

TEST_CASE("compose") {
  auto b = series({0, 3, -1, 2});
  CHECK(compose(TruncatedTaylor<cx>::variable(3), b) == b);

  // a = z^2, b = z + z^2 at order 3: (z + z^2)^2 = z^2 + 2 z^3 + ...
  auto r = compose(series({0, 0, 1, 0}), series({0, 1, 1, 0}));
  CHECK(r[0] == cx(0));
  CHECK(r[1] == cx(0));
  CHECK(r[2] == cx(1));
  CHECK(r[3] == cx(2));

  auto affine = compose(series({1, 1}), series({0, 2}));
  CHECK(affine[0] == cx(1));
  CHECK(affine[1] == cx(2));

  CHECK_THROWS_AS(compose(series({1, 1}), series({1, 1})), std::invalid_argument);
}

TEST_CASE("reciprocal") {
  auto geo = reciprocal(series({1, -1, 0, 0, 0}));
  for (int k = 0; k <= 4; ++k) CHECK(geo[k] == cx(1));

  CHECK(reciprocal(TruncatedTaylor<cx>::constant(1, 3)) == TruncatedTaylor<cx>::constant(1, 3));

  auto r = reciprocal(series({1, 2, 3}));
  CHECK(r[0] == cx(1));
  CHECK(r[1] == cx(-2));
  CHECK(r[2] == cx(1));

  CHECK_THROWS_AS(reciprocal(series({0, 1})), std::invalid_argument);
}

TEST_CASE("derivative") {
  auto d = derivative(series({0, 0, 0, 1}));
  CHECK(d.order() == 2);
  CHECK(d[2] == cx(3));

  auto dc = derivative(TruncatedTaylor<cx>::constant(5, 0));
  CHECK(dc.order() == 0);
  CHECK(dc[0] == cx(0));
}

TEST_CASE("derivative of symbolic map") {
  using P = lk::CoeffPolynomial;
  TruncatedTaylor<P> f(3);
  f.set(1, P(1));
  f.set(2, P::variable(1));
  f.set(3, P::variable(2));
  auto fp = derivative(f);
  CHECK(fp[0] == P(1));
  CHECK(fp[1] == P::variable(1).scaled(RationalComplex(2)));
  CHECK(fp[2] == P::variable(2).scaled(RationalComplex(3)));
}

TEST_CASE("ring axioms hold exactly over rational-complex coefficients") {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    auto a = random_rc_series(rng, 6);
    auto b = random_rc_series(rng, 6);
    auto c = random_rc_series(rng, 6);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
  }
}

TEST_CASE("reciprocal then mul is exactly one") {
  std::mt19937 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto a = random_rc_series(rng, 8);
    if (a[0].is_zero()) a.set(0, RationalComplex(1));
    auto one = TruncatedTaylor<RationalComplex>::constant(RationalComplex(1), 8);
    CHECK(mul(a, reciprocal(a)) == one);
  }
}

TEST_CASE("compose with the identity on either side") {
  std::mt19937 rng(11);
  auto id = TruncatedTaylor<RationalComplex>::variable(8);
  for (int rep = 0; rep < 10; ++rep) {
    auto a = random_rc_series(rng, 8);
    auto b = random_rc_series(rng, 8);
    b.set(0, RationalComplex(0));
    CHECK(compose(a, id) == a);
    CHECK(compose(id, b) == b);
  }
}

TEST_CASE("laurent_mul basics") {
  LaurentWindow<cx> zpos(1), zneg(1);
  zpos.set(1, 1.0);
  zneg.set(-1, 1.0);
  auto one = laurent_mul(zpos, zneg);
  CHECK(one.coeff(0) == cx(1));
  CHECK(one.coeff(1) == cx(0));
  CHECK(one.coeff(-2) == cx(0));

  // f'(z) = 1 + 2 c1 z against psibar_1/z + psibar_2/z^2.
  const cx c1(0.3, -0.2), pb1(1.5, 0.25), pb2(-0.5, 1.0);
  auto close = [](cx a, cx b) { return std::abs(a - b) < 1e-15; };
  LaurentWindow<cx> fp(1), pb(2);
  fp.set(0, 1.0);
  fp.set(1, 2.0 * c1);
  pb.set(-1, pb1);
  pb.set(-2, pb2);
  auto L = laurent_mul(fp, pb);
  CHECK(close(L.coeff(-1), pb1 + 2.0 * c1 * pb2));
  CHECK(L.coeff(-2) == pb2);
  CHECK(close(L.coeff(0), 2.0 * c1 * pb1));

  LaurentWindow<cx> scalar(0);
  scalar.set(0, cx(3.0, 1.0));
  auto scaled = laurent_mul(scalar, pb);
  CHECK(close(scaled.coeff(-1), cx(3.0, 1.0) * pb1));
  CHECK(close(scaled.coeff(-2), cx(3.0, 1.0) * pb2));
}

TEST_CASE("laurent_mul validity: known coefficients are immune to unknown tails") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> wdist(1, 4);
  for (int rep = 0; rep < 40; ++rep) {
    const int ma = wdist(rng), mb = wdist(rng);
    LaurentWindow<RationalComplex> a(ma), b(mb);
    for (int k = -ma; k <= ma; ++k) a.set(k, random_rc(rng));
    for (int k = -mb; k <= mb; ++k) b.set(k, random_rc(rng));
    // One-sided unknown tails, mirroring a truncated Taylor factor times a
    // fully known principal part.
    a.restrict_validity(lk::kValidNegInf, wdist(rng) - 2);
    auto r = laurent_mul(a, b);

    // Perturb every unknown position inside a widened window; coefficients
    // inside the validity range must not move.
    LaurentWindow<RationalComplex> a2(ma + 2);
    for (int k = -ma; k <= ma; ++k) a2.set(k, a.coeff(k));
    a2.restrict_validity(a.valid_lo(), a.valid_hi());
    for (int k = -(ma + 2); k <= ma + 2; ++k)
      if (!a2.is_known(k)) a2.set(k, random_rc(rng));
    auto r2 = laurent_mul(a2, b);

    for (int m = -(ma + mb); m <= ma + mb; ++m) {
      if (!r.is_known(m)) continue;
      CHECK(r.coeff(m) == r2.coeff(m));
      CHECK(r2.is_known(m));
    }
  }
}

TEST_CASE("laurent_mul validity interval arithmetic") {
  LaurentWindow<cx> fp(4), pb(4);  // f' truncated above, momenta fully known
  fp.restrict_validity(lk::kValidNegInf, 4);
  auto prod = laurent_mul(fp, pb);
  CHECK(prod.valid_hi() == 0);
  CHECK(prod.valid_lo() == lk::kValidNegInf);

  // Two opposite unknown tails leave nothing determined.
  LaurentWindow<cx> lowTail(2);
  lowTail.restrict_validity(-1, lk::kValidInf);
  auto bad = laurent_mul(fp, lowTail);
  CHECK(bad.valid_empty());
}
