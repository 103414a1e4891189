#include "lk/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace lk {

Monomial Monomial::var(int j, uint32_t e) {
  if (j < 1) throw std::invalid_argument("Monomial::var: index must be >= 1");
  std::vector<uint32_t> exps(static_cast<size_t>(j), 0u);
  exps.back() = e;
  return Monomial(std::move(exps));
}

long Monomial::weight() const {
  long w = 0;
  for (size_t i = 0; i < exps_.size(); ++i) w += static_cast<long>(i + 1) * exps_[i];
  return w;
}

long Monomial::total_degree() const {
  long d = 0;
  for (uint32_t e : exps_) d += e;
  return d;
}

Monomial Monomial::times(const Monomial& o) const {
  std::vector<uint32_t> exps(std::max(exps_.size(), o.exps_.size()), 0u);
  for (size_t i = 0; i < exps.size(); ++i) {
    uint32_t a = i < exps_.size() ? exps_[i] : 0u;
    uint32_t b = i < o.exps_.size() ? o.exps_[i] : 0u;
    exps[i] = a + b;
  }
  return Monomial(std::move(exps));
}

Monomial Monomial::divided_by_var(int j) const {
  if (exponent(j) == 0) throw std::invalid_argument("Monomial: not divisible by variable");
  std::vector<uint32_t> exps = exps_;
  exps[static_cast<size_t>(j - 1)] -= 1;
  return Monomial(std::move(exps));
}

std::string Monomial::str() const {
  std::string s;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "c" + std::to_string(i + 1);
    if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
  }
  return s;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const long wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  return std::lexicographical_compare(a.exps().begin(), a.exps().end(), b.exps().begin(),
                                      b.exps().end());
}

CoeffPolynomial::CoeffPolynomial(RationalComplex constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial(), std::move(constant));
}

CoeffPolynomial CoeffPolynomial::variable(int j) {
  return term(Monomial::var(j), RationalComplex(1));
}

CoeffPolynomial CoeffPolynomial::term(Monomial m, RationalComplex coeff) {
  CoeffPolynomial p;
  if (!coeff.is_zero()) p.terms_.emplace(std::move(m), std::move(coeff));
  return p;
}

RationalComplex CoeffPolynomial::constant_value() const {
  if (terms_.empty()) return RationalComplex(0);
  if (!is_constant()) throw std::domain_error("CoeffPolynomial: not a constant");
  return terms_.begin()->second;
}

int CoeffPolynomial::max_var() const {
  int n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.max_var());
  return n;
}

long CoeffPolynomial::weighted_degree() const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.weight());
  return d;
}

void CoeffPolynomial::add_term(const Monomial& m, const RationalComplex& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

CoeffPolynomial& CoeffPolynomial::operator+=(const CoeffPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CoeffPolynomial& CoeffPolynomial::operator-=(const CoeffPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CoeffPolynomial operator*(const CoeffPolynomial& a, const CoeffPolynomial& b) {
  CoeffPolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

CoeffPolynomial operator-(const CoeffPolynomial& a) {
  CoeffPolynomial r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

CoeffPolynomial CoeffPolynomial::scaled(const RationalComplex& v) const {
  CoeffPolynomial r;
  if (v.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * v);
  return r;
}

CoeffPolynomial CoeffPolynomial::derivative(int j) const {
  CoeffPolynomial r;
  for (const auto& [m, c] : terms_) {
    const uint32_t e = m.exponent(j);
    if (e == 0) continue;
    r.add_term(m.divided_by_var(j), c * RationalComplex(static_cast<int>(e)));
  }
  return r;
}

std::complex<double> CoeffPolynomial::eval(std::span<const std::complex<double>> c) const {
  std::complex<double> r = 0.0;
  for (const auto& [m, coeff] : terms_) {
    std::complex<double> t = coeff.to_complex();
    for (int j = 1; j <= m.max_var(); ++j) {
      if (static_cast<size_t>(j) > c.size())
        throw std::invalid_argument("CoeffPolynomial::eval: point has too few coordinates");
      for (uint32_t e = 0; e < m.exponent(j); ++e) t *= c[static_cast<size_t>(j - 1)];
    }
    r += t;
  }
  return r;
}

RationalComplex CoeffPolynomial::eval_exact(std::span<const RationalComplex> c) const {
  RationalComplex r(0);
  for (const auto& [m, coeff] : terms_) {
    RationalComplex t = coeff;
    for (int j = 1; j <= m.max_var(); ++j) {
      if (static_cast<size_t>(j) > c.size())
        throw std::invalid_argument("CoeffPolynomial::eval_exact: point has too few coordinates");
      for (uint32_t e = 0; e < m.exponent(j); ++e) t *= c[static_cast<size_t>(j - 1)];
    }
    r += t;
  }
  return r;
}

std::string CoeffPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  // Descending graded-lex so leading terms print first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    RationalComplex c = it->second;
    bool negative = false;
    if (c.im() == 0 && c.re() < 0) {
      negative = true;
      c = -c;
    } else if (c.re() == 0 && c.im() < 0) {
      negative = true;
      c = -c;
    }
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    const bool unit = (c == RationalComplex(1));
    if (m.is_one()) {
      s += c.str();
    } else if (unit) {
      s += m.str();
    } else {
      s += c.str() + "*" + m.str();
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const CoeffPolynomial& p) { return os << p.str(); }

}  // namespace lk
