#include "lk/generators.hpp"

#include <sstream>
#include <stdexcept>

namespace lk {

namespace {

/// Non-negative Laurent part coefficient row: the z^k coefficient of
/// f' psibar is sum_{j>=0} (j+1) c_j psibar_{j-k} (c_0 = 1), carried on the
/// extended slot range -k..n.  Slots above n - k would need c past the
/// truncation and stay partial.
CovariantFunctional curly_L(int n, int k) {
  CovariantFunctional f(n, -k);
  for (int j = 0; j <= n; ++j) {
    const int slot = j - k;
    if (slot > n) break;
    f.at(slot) = (j == 0) ? CoeffPolynomial(1)
                          : CoeffPolynomial::variable(j).scaled(RationalComplex(j + 1));
  }
  f.trusted = n - k;
  return f;
}

CovariantFunctional unit_slot(int n, int slot) {
  CovariantFunctional f(n, std::min(1, slot));
  f.at(slot) = CoeffPolynomial(1);
  return f;
}

/// Drops the (identically cancelled) extended slots, keeping 1..n.
CovariantFunctional canonical(const CovariantFunctional& f, int trusted) {
  for (int k = f.min_index; k <= 0; ++k)
    if (!f.at(k).is_zero())
      throw std::logic_error("build_L_nonpositive: extended momentum slot failed to cancel");
  CovariantFunctional r(f.n);
  for (int k = 1; k <= f.n; ++k) r.at(k) = f.at(k);
  r.trusted = trusted;
  return r;
}

/// psibar_0^* = -sum_k c_k psibar_k.
CovariantFunctional psibar0_star(int n) {
  CovariantFunctional f(n);
  for (int k = 1; k <= n; ++k) f.at(k) = -CoeffPolynomial::variable(k);
  return f;
}

/// psibar_{-2}^* from its function-level form 1/z - 1/f - c1 - (c2 - c1^2) f,
/// expanded with symbolic coefficients; slot k needs c_{k+2}, so trust n-2.
CovariantFunctional psibar_m2_star(int n) {
  const int order = n;  // z * (the function), a Taylor series
  const auto f = symbolic_f(n, order + 1);
  TruncatedTaylor<CoeffPolynomial> g(order);  // f / z
  for (int k = 0; k <= order; ++k) g.set(k, f[k + 1]);
  const auto zf = shift_up(f.truncated(order), 1);

  const auto c1 = CoeffPolynomial::variable(1);
  const auto c2 = CoeffPolynomial::variable(2);
  auto zW = TruncatedTaylor<CoeffPolynomial>::constant(CoeffPolynomial(1), order);
  zW = sub(zW, reciprocal(g));
  zW = sub(zW, scale(TruncatedTaylor<CoeffPolynomial>::variable(order), c1));
  zW = sub(zW, scale(zf, c2 - c1 * c1));

  CovariantFunctional out(n);
  for (int k = 1; k <= n - 2; ++k) out.at(k) = zW[k + 2];
  out.trusted = n - 2;
  return out;
}

}  // namespace

LoweringGenerators build_L_nonpositive(int n, int depth) {
  if (n < 3) throw std::invalid_argument("build_L_nonpositive: need n >= 3");
  if (depth < 0 || depth > n - 1)
    throw std::invalid_argument(
        "build_L_nonpositive: depth must satisfy 0 <= depth <= n - 1 "
        "(leading coefficients must be representable)");

  LoweringGenerators out;
  out.n = n;

  const auto pb0s = psibar0_star(n);
  const auto c1 = CoeffPolynomial::variable(1);
  const auto c2 = CoeffPolynomial::variable(2);

  // L_0 = curly_L_0 - (psibar_0 - psibar_0^*).
  {
    auto L0 = curly_L(n, 0) - (unit_slot(n, 0) - pb0s);
    out.gens.push_back(canonical(L0, n));
  }
  if (depth >= 1) {
    // L_{-1} = curly_L_1 - (psibar_{-1} - 0) - 2 c1 (psibar_0 - psibar_0^*).
    auto L1 = curly_L(n, 1) - unit_slot(n, -1) -
              scale_functional(unit_slot(n, 0) - pb0s, c1.scaled(RationalComplex(2)));
    out.gens.push_back(canonical(L1, n - 1));
  }
  if (depth >= 2) {
    // L_{-2} = curly_L_2 - (psibar_{-2} - psibar_{-2}^*) - 2 c1 psibar_{-1}
    //          - 3 c2 (psibar_0 - psibar_0^*).
    auto L2 = curly_L(n, 2) - (unit_slot(n, -2) - psibar_m2_star(n)) -
              scale_functional(unit_slot(n, -1), c1.scaled(RationalComplex(2))) -
              scale_functional(unit_slot(n, 0) - pb0s, c2.scaled(RationalComplex(3)));
    out.gens.push_back(canonical(L2, n - 2));
  }
  for (int m = 3; m <= depth; ++m) {
    auto next = scale_functional(poisson_bracket(out.gen(m - 1), out.gen(1)),
                                 RationalComplex(Rational(1, m - 2)));
    if (next.has_extended_slots())
      throw std::logic_error("build_L_nonpositive: bracket left the momenta-linear span");
    out.gens.push_back(std::move(next));
  }
  return out;
}

TruncatedTaylor<CoeffPolynomial> lowering_action_series(int k, int n) {
  if (k != 0 && k != -1 && k != -2)
    throw std::invalid_argument("lowering_action_series: k must be 0, -1 or -2");
  const int order = n + 1;
  const auto f = symbolic_f(n, order + 1);
  const auto fp = derivative(f);  // order n+1

  if (k == 0) return sub(shift_up(fp, 1), f.truncated(order));
  if (k == -1) {
    const auto c1 = CoeffPolynomial::variable(1);
    auto e = sub(fp, scale(f.truncated(order), c1.scaled(RationalComplex(2))));
    e.set(0, e[0] - CoeffPolynomial(1));
    return e;
  }

  // k == -2: z E = f' - z/f - 3 c1 z + (c1^2 - 4 c2) z f, then shift down.
  const auto c1 = CoeffPolynomial::variable(1);
  const auto c2 = CoeffPolynomial::variable(2);
  TruncatedTaylor<CoeffPolynomial> g(order);  // f / z
  for (int j = 0; j <= order; ++j) g.set(j, f[j + 1]);
  auto zE = sub(fp.truncated(order), reciprocal(g));
  zE = sub(zE, scale(TruncatedTaylor<CoeffPolynomial>::variable(order),
                     c1.scaled(RationalComplex(3))));
  zE = add(zE, scale(shift_up(f.truncated(order), 1),
                     c1 * c1 - c2.scaled(RationalComplex(4))));
  TruncatedTaylor<CoeffPolynomial> e(order - 1);
  for (int j = 1; j <= order; ++j) e.set(j - 1, zE[j]);
  return e;
}

ActionCheckResult kirillov_action_check(int k, int n) {
  ActionCheckResult res;
  res.k = k;
  if (k != 0 && k != -1 && k != -2)
    throw std::invalid_argument("kirillov_action_check: k must be 0, -1 or -2");

  const auto gens = build_L_nonpositive(n, -k > 2 ? -k : 2);
  const auto& functional = gens.gen(-k);
  const auto formula = lowering_action_series(k, n);

  res.ok = true;
  const int slots = std::min(functional.trusted, n);
  for (int j = 1; j <= slots; ++j) {
    const CoeffPolynomial& lhs = functional.at(j);
    const CoeffPolynomial& rhs = formula[j + 1];
    if (!(lhs == rhs)) {
      res.ok = false;
      std::ostringstream os;
      os << "slot " << j << ": functional " << lhs.str() << " vs formula " << rhs.str();
      res.detail = os.str();
      break;
    }
  }
  res.slots_checked = slots;
  return res;
}

}  // namespace lk
