#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lk/rational.hpp"

namespace lk {

/// Power product over the coefficient variables c1, c2, ...; exps_[i] is the
/// exponent of c_{i+1}, with trailing zeros stripped so representation is
/// unique.  The weight grading assigns wt(c_k) = k.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<uint32_t> exps) : exps_(std::move(exps)) { strip(); }

  static Monomial var(int j, uint32_t e = 1);

  bool is_one() const { return exps_.empty(); }
  int max_var() const { return static_cast<int>(exps_.size()); }
  uint32_t exponent(int j) const {
    return (j >= 1 && j <= max_var()) ? exps_[static_cast<size_t>(j - 1)] : 0u;
  }
  long weight() const;
  long total_degree() const;

  Monomial times(const Monomial& o) const;
  /// Divide by c_j once; exponent of c_j must be positive.
  Monomial divided_by_var(int j) const;

  const std::vector<uint32_t>& exps() const { return exps_; }
  std::string str() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  void strip() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<uint32_t> exps_;
};

/// Graded lexicographic order: weight first, then the exponent vector.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial in c1..cn with exact complex-rational
/// coefficients.  Zero-coefficient terms are never stored.
class CoeffPolynomial {
 public:
  using TermMap = std::map<Monomial, RationalComplex, MonomialOrder>;

  CoeffPolynomial() = default;
  explicit CoeffPolynomial(RationalComplex constant);
  CoeffPolynomial(int constant) : CoeffPolynomial(RationalComplex(constant)) {}

  static CoeffPolynomial variable(int j);
  static CoeffPolynomial term(Monomial m, RationalComplex coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  RationalComplex constant_value() const;

  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Largest variable index appearing in any term (0 for constants).
  int max_var() const;
  /// Largest term weight; -1 for the zero polynomial.
  long weighted_degree() const;

  void add_term(const Monomial& m, const RationalComplex& coeff);

  CoeffPolynomial& operator+=(const CoeffPolynomial& o);
  CoeffPolynomial& operator-=(const CoeffPolynomial& o);
  friend CoeffPolynomial operator+(CoeffPolynomial a, const CoeffPolynomial& b) { return a += b; }
  friend CoeffPolynomial operator-(CoeffPolynomial a, const CoeffPolynomial& b) { return a -= b; }
  friend CoeffPolynomial operator*(const CoeffPolynomial& a, const CoeffPolynomial& b);
  friend CoeffPolynomial operator-(const CoeffPolynomial& a);
  CoeffPolynomial scaled(const RationalComplex& v) const;

  CoeffPolynomial derivative(int j) const;

  std::complex<double> eval(std::span<const std::complex<double>> c) const;
  RationalComplex eval_exact(std::span<const RationalComplex> c) const;

  /// Canonical text, terms in descending graded-lex order, e.g.
  /// "4*c1^2 - 3*c2".
  std::string str() const;

  friend bool operator==(const CoeffPolynomial& a, const CoeffPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const CoeffPolynomial& a, const CoeffPolynomial& b) { return !(a == b); }

 private:
  TermMap terms_;
};

inline CoeffPolynomial ring_inverse(const CoeffPolynomial& p) {
  if (!p.is_constant() || p.is_zero())
    throw std::domain_error("CoeffPolynomial: only nonzero constants are invertible");
  return CoeffPolynomial(ring_inverse(p.constant_value()));
}

std::ostream& operator<<(std::ostream& os, const CoeffPolynomial& p);

}  // namespace lk
