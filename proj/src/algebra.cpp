#include "lk/algebra.hpp"

#include <limits>
#include <stdexcept>

namespace lk {

namespace {

constexpr int kNoOffset = std::numeric_limits<int>::min() / 4;

std::string joined_terms(const std::vector<CoeffPolynomial>& coeffs, int first_index,
                         const std::string& symbol) {
  std::string s;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const CoeffPolynomial& p = coeffs[i];
    if (p.is_zero()) continue;
    if (!s.empty()) s += " + ";
    const int idx = first_index + static_cast<int>(i);
    if (p == CoeffPolynomial(1)) {
      s += symbol + std::to_string(idx);
    } else if (p.term_count() > 1) {
      s += "(" + p.str() + ")*" + symbol + std::to_string(idx);
    } else {
      s += p.str() + "*" + symbol + std::to_string(idx);
    }
  }
  return s.empty() ? "0" : s;
}

/// Largest weight excess wt(term) - slot over all stored slots; kNoOffset
/// for identically zero coefficient lists.  Bounds which variables the
/// coefficient at slot k can involve: indices <= k + offset.
int weight_offset(const std::vector<CoeffPolynomial>& coeffs, int first_index) {
  int off = kNoOffset;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    const long w = coeffs[i].weighted_degree();
    const int k = first_index + static_cast<int>(i);
    off = std::max(off, static_cast<int>(w) - k);
  }
  return off;
}

int bracket_trust(int n, int trust_a, int off_a, int trust_b, int off_b) {
  int t = std::min(trust_a, trust_b);
  if (off_a != kNoOffset) t = std::min({t, trust_b - off_a, n - off_a});
  if (off_b != kNoOffset) t = std::min({t, trust_a - off_b, n - off_b});
  return std::max(t, 0);
}

}  // namespace

bool VectorFieldOnM::is_zero() const {
  for (const CoeffPolynomial& p : comp)
    if (!p.is_zero()) return false;
  return true;
}

std::string VectorFieldOnM::str() const { return joined_terms(comp, 1, "d"); }

bool CovariantFunctional::has_extended_slots() const {
  for (int k = min_index; k <= 0; ++k)
    if (!at(k).is_zero()) return true;
  return false;
}

bool CovariantFunctional::is_zero() const {
  for (const CoeffPolynomial& p : coeff)
    if (!p.is_zero()) return false;
  return true;
}

std::string CovariantFunctional::str() const { return joined_terms(coeff, min_index, "psibar"); }

std::string OneForm::str() const { return joined_terms(coeff, 1, "dc"); }

VectorFieldOnM kirillov_field(int j, int n) {
  if (j < 1 || j > n) throw std::invalid_argument("kirillov_field: index must satisfy 1 <= j <= n");
  VectorFieldOnM v(n);
  v.component(j) = CoeffPolynomial(1);
  for (int k = 1; k <= n - j; ++k)
    v.component(j + k) = CoeffPolynomial::variable(k).scaled(RationalComplex(k + 1));
  return v;
}

CoeffPolynomial apply_field(const VectorFieldOnM& v, const CoeffPolynomial& p) {
  CoeffPolynomial r;
  for (int j = 1; j <= std::min(v.n, p.max_var()); ++j)
    r += v.component(j) * p.derivative(j);
  return r;
}

VectorFieldOnM lie_bracket(const VectorFieldOnM& a, const VectorFieldOnM& b) {
  if (a.n != b.n) throw std::invalid_argument("lie_bracket: truncation mismatch");
  const int n = a.n;
  VectorFieldOnM r(n);
  for (int k = 1; k <= n; ++k)
    r.component(k) = apply_field(b, a.component(k)) - apply_field(a, b.component(k));
  r.trusted = bracket_trust(n, a.trusted, weight_offset(a.comp, 1), b.trusted,
                            weight_offset(b.comp, 1));
  return r;
}

CovariantFunctional poisson_bracket(const CovariantFunctional& f, const CovariantFunctional& g) {
  if (f.n != g.n) throw std::invalid_argument("poisson_bracket: truncation mismatch");
  if (f.min_index != 1 || g.min_index != 1)
    throw std::invalid_argument("poisson_bracket: operands must be canonical (slots 1..n)");
  const int n = f.n;
  CovariantFunctional r(n);
  for (int k = 1; k <= n; ++k) {
    CoeffPolynomial s;
    for (int m = 1; m <= n; ++m)
      s += f.at(k).derivative(m) * g.at(m) - g.at(k).derivative(m) * f.at(m);
    r.at(k) = std::move(s);
  }
  r.trusted = bracket_trust(n, f.trusted, weight_offset(f.coeff, f.min_index), g.trusted,
                            weight_offset(g.coeff, g.min_index));
  return r;
}

CovariantFunctional dual_of(const VectorFieldOnM& v) {
  CovariantFunctional f(v.n);
  f.coeff = v.comp;
  f.trusted = v.trusted;
  return f;
}

VectorFieldOnM field_of(const CovariantFunctional& f) {
  if (f.min_index != 1)
    throw std::invalid_argument("field_of: functional carries extended momentum slots");
  VectorFieldOnM v(f.n);
  v.comp = f.coeff;
  v.trusted = f.trusted;
  return v;
}

CovariantFunctional operator+(const CovariantFunctional& a, const CovariantFunctional& b) {
  if (a.n != b.n) throw std::invalid_argument("functional sum: truncation mismatch");
  CovariantFunctional r(a.n, std::min(a.min_index, b.min_index));
  for (int k = r.min_index; k <= r.n; ++k) {
    if (k >= a.min_index) r.at(k) += a.at(k);
    if (k >= b.min_index) r.at(k) += b.at(k);
  }
  r.trusted = std::min(a.trusted, b.trusted);
  return r;
}

CovariantFunctional operator-(const CovariantFunctional& a, const CovariantFunctional& b) {
  return a + scale_functional(b, RationalComplex(-1));
}

CovariantFunctional scale_functional(const CovariantFunctional& f, const CoeffPolynomial& p) {
  CovariantFunctional r(f.n, f.min_index);
  for (int k = f.min_index; k <= f.n; ++k) r.at(k) = f.at(k) * p;
  r.trusted = f.trusted;
  return r;
}

CovariantFunctional scale_functional(const CovariantFunctional& f, const RationalComplex& v) {
  CovariantFunctional r(f.n, f.min_index);
  for (int k = f.min_index; k <= f.n; ++k) r.at(k) = f.at(k).scaled(v);
  r.trusted = f.trusted;
  return r;
}

CoeffPolynomial pair(const OneForm& w, const VectorFieldOnM& v) {
  if (w.n != v.n) throw std::invalid_argument("pair: truncation mismatch");
  CoeffPolynomial r;
  for (int k = 1; k <= w.n; ++k) r += w.at(k) * v.component(k);
  return r;
}

std::vector<CoeffPolynomial> p_polynomials(int n) {
  if (n < 0) throw std::invalid_argument("p_polynomials: negative order");
  std::vector<CoeffPolynomial> p(static_cast<size_t>(n) + 1);
  p[0] = CoeffPolynomial(1);
  for (int k = 1; k <= n; ++k) {
    CoeffPolynomial s;
    for (int j = 1; j <= k; ++j)
      s += CoeffPolynomial::variable(j).scaled(RationalComplex(j + 1)) * p[static_cast<size_t>(k - j)];
    p[static_cast<size_t>(k)] = -s;
  }
  return p;
}

CoeffPolynomial kirillov_action_on_P(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("kirillov_action_on_P: bad indices");
  const auto P = p_polynomials(m);
  const int n = std::max(k, std::max(m, 1));
  return apply_field(kirillov_field(k, n), P[static_cast<size_t>(m)]);
}

PiExpansion pi_expansion(int n) {
  if (n < 1) throw std::invalid_argument("pi_expansion: order must be >= 1");
  PiExpansion out;
  out.K.resize(static_cast<size_t>(n));
  out.Pi.resize(static_cast<size_t>(n));
  const auto P = p_polynomials(n);
  for (int m = 1; m <= n; ++m) {
    CoeffPolynomial km;
    for (int j = 1; j <= m - 1; ++j)
      km += (CoeffPolynomial::variable(m - j) * CoeffPolynomial::variable(j))
                .scaled(RationalComplex(j * (m - j + 1)));
    out.K[static_cast<size_t>(m - 1)] = -km;
  }
  for (int m = 1; m <= n; ++m) {
    CoeffPolynomial pim = CoeffPolynomial::variable(m).scaled(RationalComplex(m));
    for (int j = 1; j <= m; ++j)
      pim += out.K[static_cast<size_t>(m - j)] * P[static_cast<size_t>(j - 1)];
    out.Pi[static_cast<size_t>(m - 1)] = std::move(pim);
  }
  return out;
}

std::vector<OneForm> omega_forms(int n) {
  if (n < 1) throw std::invalid_argument("omega_forms: order must be >= 1");
  std::vector<OneForm> w;
  w.reserve(static_cast<size_t>(n));
  for (int m = 1; m <= n; ++m) {
    OneForm wm(n);
    wm.at(m) = CoeffPolynomial(1);
    for (int j = 1; j <= m - 1; ++j) {
      const CoeffPolynomial factor = CoeffPolynomial::variable(j).scaled(RationalComplex(j + 1));
      const OneForm& prev = w[static_cast<size_t>(m - j - 1)];
      for (int k = 1; k <= n; ++k) wm.at(k) -= factor * prev.at(k);
    }
    w.push_back(std::move(wm));
  }
  return w;
}

std::vector<OneForm> omega_forms_closed(int n) {
  if (n < 1) throw std::invalid_argument("omega_forms_closed: order must be >= 1");
  const auto P = p_polynomials(n);
  std::vector<OneForm> w;
  w.reserve(static_cast<size_t>(n));
  for (int m = 1; m <= n; ++m) {
    OneForm wm(n);
    wm.at(m) = CoeffPolynomial(1);
    for (int j = 1; j <= m - 1; ++j) wm.at(m - j) = P[static_cast<size_t>(j)];
    w.push_back(std::move(wm));
  }
  return w;
}

TruncatedTaylor<CoeffPolynomial> symbolic_f(int n, int order) {
  if (n < 1 || order < 1) throw std::invalid_argument("symbolic_f: need n >= 1, order >= 1");
  TruncatedTaylor<CoeffPolynomial> f(order);
  f.set(1, CoeffPolynomial(1));
  for (int k = 1; k <= n && k + 1 <= order; ++k) f.set(k + 1, CoeffPolynomial::variable(k));
  return f;
}

TruncatedTaylor<CoeffPolynomial> functional_as_series(const CovariantFunctional& f, int order) {
  if (f.has_extended_slots())
    throw std::invalid_argument("functional_as_series: extended momentum slots have no series image");
  TruncatedTaylor<CoeffPolynomial> s(order);
  for (int k = 1; k <= f.n && k + 1 <= order; ++k) s.set(k + 1, f.at(k));
  return s;
}

}  // namespace lk
