#pragma once

#include <span>
#include <string>
#include <vector>

#include "lk/polynomial.hpp"
#include "lk/series.hpp"

namespace lk {

/// First-order vector field on the truncated coefficient body: component j
/// multiplies d/dc_j, j = 1..n.  `trusted` marks how many leading slots
/// coincide with the untruncated object; everything a bracket could not
/// determine from retained data lies above it.
struct VectorFieldOnM {
  int n = 0;
  std::vector<CoeffPolynomial> comp;  // comp[j-1] multiplies d/dc_j
  int trusted = 0;

  explicit VectorFieldOnM(int n_) : n(n_), comp(static_cast<size_t>(n_)), trusted(n_) {}

  const CoeffPolynomial& component(int j) const { return comp.at(static_cast<size_t>(j - 1)); }
  CoeffPolynomial& component(int j) { return comp.at(static_cast<size_t>(j - 1)); }
  bool is_zero() const;
  std::string str() const;

  friend bool operator==(const VectorFieldOnM& a, const VectorFieldOnM& b) {
    return a.n == b.n && a.comp == b.comp;
  }
};

/// Momenta-linear functional sum_k a_k(c) psibar_k.  Normally k runs 1..n;
/// intermediate objects may carry extra slots psibar_0, psibar_{-1},
/// psibar_{-2} (min_index down to -2).  Linearity in the momenta is
/// structural: products of psibar's are not representable.
struct CovariantFunctional {
  int n = 0;
  int min_index = 1;
  std::vector<CoeffPolynomial> coeff;  // coeff[k - min_index] multiplies psibar_k
  int trusted = 0;

  CovariantFunctional(int n_, int min_index_ = 1)
      : n(n_),
        min_index(min_index_),
        coeff(static_cast<size_t>(n_ - min_index_ + 1)),
        trusted(n_) {}

  const CoeffPolynomial& at(int k) const { return coeff.at(static_cast<size_t>(k - min_index)); }
  CoeffPolynomial& at(int k) { return coeff.at(static_cast<size_t>(k - min_index)); }
  bool has_extended_slots() const;
  bool is_zero() const;
  std::string str() const;

  friend bool operator==(const CovariantFunctional& a, const CovariantFunctional& b) {
    return a.n == b.n && a.min_index == b.min_index && a.coeff == b.coeff;
  }
};

/// One-form sum_k a_k(c) dc_k on the truncated coefficient body.
struct OneForm {
  int n = 0;
  std::vector<CoeffPolynomial> coeff;  // coeff[k-1] multiplies dc_k

  explicit OneForm(int n_) : n(n_), coeff(static_cast<size_t>(n_)) {}

  const CoeffPolynomial& at(int k) const { return coeff.at(static_cast<size_t>(k - 1)); }
  CoeffPolynomial& at(int k) { return coeff.at(static_cast<size_t>(k - 1)); }
  std::string str() const;

  friend bool operator==(const OneForm& a, const OneForm& b) {
    return a.n == b.n && a.coeff == b.coeff;
  }
};

/// Truncated raising generator L_j = d_j + sum_{k=1}^{n-j} (k+1) c_k d_{j+k}.
VectorFieldOnM kirillov_field(int j, int n);

/// Derivation of a polynomial along a field: sum_j comp_j dP/dc_j.
CoeffPolynomial apply_field(const VectorFieldOnM& v, const CoeffPolynomial& p);

/// Commutator oriented so that kirillov fields close as
/// lie_bracket(L_m, L_k) = (k - m) L_{m+k} on retained slots.
VectorFieldOnM lie_bracket(const VectorFieldOnM& a, const VectorFieldOnM& b);

/// Coordinate Poisson bracket restricted to momenta-linear functionals;
/// it is the covariant image of lie_bracket under the duality below.
CovariantFunctional poisson_bracket(const CovariantFunctional& f, const CovariantFunctional& g);

CovariantFunctional dual_of(const VectorFieldOnM& v);
VectorFieldOnM field_of(const CovariantFunctional& f);

/// Slot-wise sum/difference; operands must share n, the result covers the
/// union of their momentum slots and the minimum of their trust marks.
CovariantFunctional operator+(const CovariantFunctional& a, const CovariantFunctional& b);
CovariantFunctional operator-(const CovariantFunctional& a, const CovariantFunctional& b);
CovariantFunctional scale_functional(const CovariantFunctional& f, const CoeffPolynomial& p);
CovariantFunctional scale_functional(const CovariantFunctional& f, const RationalComplex& v);

/// Pairing <omega, V> = sum_k omega_k * V_k.
CoeffPolynomial pair(const OneForm& w, const VectorFieldOnM& v);

/// P_0..P_n with P_0 = 1 and P_k = -sum_{j=1}^{k} (j+1) c_j P_{k-j}; these
/// are the Taylor coefficients of 1/f'(z).
std::vector<CoeffPolynomial> p_polynomials(int n);

/// Applies kirillov_field(k) to P_m; equals (m-2k-1) P_{m-k} for m >= k and
/// vanishes for m < k.
CoeffPolynomial kirillov_action_on_P(int k, int m);

struct PiExpansion {
  std::vector<CoeffPolynomial> K;   // K[m-1] = K_m, m = 1..n
  std::vector<CoeffPolynomial> Pi;  // Pi[m-1] = Pi_m
};

/// K_m and Pi_m recurrences expanding the rotation generator over the
/// kirillov basis.
PiExpansion pi_expansion(int n);

/// omega_1..omega_n via the recurrence omega_n = dc_n - sum (j+1) c_j omega_{n-j}.
std::vector<OneForm> omega_forms(int n);
/// Same forms from the closed expression omega_k = dc_k + sum P_j dc_{k-j}.
std::vector<OneForm> omega_forms_closed(int n);

/// Normalized symbolic map f(z) = z (1 + c1 z + ... + cn z^n) as a series of
/// polynomial coefficients, truncated at `order` (>= n+1 keeps every
/// retained coefficient).
TruncatedTaylor<CoeffPolynomial> symbolic_f(int n, int order);

/// Function-level view of a momenta-linear functional: sum_k a_k(c) z^{k+1}.
TruncatedTaylor<CoeffPolynomial> functional_as_series(const CovariantFunctional& f, int order);

// --------------------------------------------------------------------------
// Velocity coordinates in the kirillov basis.

/// u_k = cdot_k - sum_{j=1}^{k-1} (j+1) c_j u_{k-j}; inverse of cdot_from_u.
template <class T>
std::vector<T> u_from_cdot(std::span<const T> cdot, std::span<const T> c) {
  if (cdot.size() != c.size())
    throw std::invalid_argument("u_from_cdot: length mismatch");
  const int n = static_cast<int>(c.size());
  std::vector<T> u(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    T s = cdot[static_cast<size_t>(k - 1)];
    for (int j = 1; j <= k - 1; ++j)
      s -= T(j + 1) * c[static_cast<size_t>(j - 1)] * u[static_cast<size_t>(k - j - 1)];
    u[static_cast<size_t>(k - 1)] = s;
  }
  return u;
}

/// cdot_m = sum_{k<=m} (m-k+1) c_{m-k} u_k with c_0 = 1: the velocity of the
/// field sum_k u_k L_k evaluated at c.
template <class T>
std::vector<T> cdot_from_u(std::span<const T> u, std::span<const T> c) {
  if (u.size() != c.size())
    throw std::invalid_argument("cdot_from_u: length mismatch");
  const int n = static_cast<int>(c.size());
  std::vector<T> cdot(static_cast<size_t>(n));
  for (int m = 1; m <= n; ++m) {
    T s = u[static_cast<size_t>(m - 1)];
    for (int k = 1; k < m; ++k)
      s += T(m - k + 1) * c[static_cast<size_t>(m - k - 1)] * u[static_cast<size_t>(k - 1)];
    cdot[static_cast<size_t>(m - 1)] = s;
  }
  return cdot;
}

}  // namespace lk
