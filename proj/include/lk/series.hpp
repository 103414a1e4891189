#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lk {

inline std::complex<double> ring_inverse(const std::complex<double>& v) {
  if (v == std::complex<double>(0.0, 0.0))
    throw std::domain_error("series: inverse of zero coefficient");
  return 1.0 / v;
}

/// Formal power series a_0 + a_1 z + ... + a_N z^N known exactly up to its
/// truncation order N.  Coefficients live in any commutative ring T with
/// T{} == 0, T(1) == 1 and (where needed) ring_inverse().
///
/// Truncation policy: every binary operation carries the minimum of the
/// operands' orders.  Nothing is zero-padded to pretend precision.
template <class T>
class TruncatedTaylor {
 public:
  explicit TruncatedTaylor(int order) : coeffs_(check_order(order) + 1) {}
  explicit TruncatedTaylor(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TruncatedTaylor: empty coefficient list");
  }

  static TruncatedTaylor constant(T v, int order) {
    TruncatedTaylor s(order);
    s.coeffs_[0] = std::move(v);
    return s;
  }
  static TruncatedTaylor variable(int order) {
    if (order < 1) throw std::invalid_argument("TruncatedTaylor::variable: order must be >= 1");
    TruncatedTaylor s(order);
    s.coeffs_[1] = T(1);
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const T& operator[](int k) const {
    range_check(k);
    return coeffs_[static_cast<size_t>(k)];
  }
  void set(int k, T v) {
    range_check(k);
    coeffs_[static_cast<size_t>(k)] = std::move(v);
  }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Copy cut down to a lower order.  Raising the order is not allowed.
  TruncatedTaylor truncated(int new_order) const {
    if (new_order < 0 || new_order > order())
      throw std::invalid_argument("TruncatedTaylor::truncated: order out of range");
    return TruncatedTaylor(
        std::vector<T>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
  }

  bool is_zero() const {
    for (const T& c : coeffs_)
      if (!(c == T{})) return false;
    return true;
  }

  friend bool operator==(const TruncatedTaylor& a, const TruncatedTaylor& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("TruncatedTaylor: negative order");
    return order;
  }
  void range_check(int k) const {
    if (k < 0 || k > order())
      throw std::out_of_range("TruncatedTaylor: coefficient index out of range");
  }

  std::vector<T> coeffs_;
};

template <class T>
TruncatedTaylor<T> add(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  const int n = std::min(a.order(), b.order());
  TruncatedTaylor<T> r(n);
  for (int k = 0; k <= n; ++k) r.set(k, a[k] + b[k]);
  return r;
}

template <class T>
TruncatedTaylor<T> sub(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  const int n = std::min(a.order(), b.order());
  TruncatedTaylor<T> r(n);
  for (int k = 0; k <= n; ++k) r.set(k, a[k] - b[k]);
  return r;
}

/// Cauchy product, truncated at the minimum operand order.
template <class T>
TruncatedTaylor<T> mul(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  const int n = std::min(a.order(), b.order());
  TruncatedTaylor<T> r(n);
  for (int k = 0; k <= n; ++k) {
    T s{};
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    r.set(k, s);
  }
  return r;
}

template <class T>
TruncatedTaylor<T> scale(const TruncatedTaylor<T>& a, const T& v) {
  TruncatedTaylor<T> r(a.order());
  for (int k = 0; k <= a.order(); ++k) r.set(k, a[k] * v);
  return r;
}

/// a(b(z)) for series b with b(0) = 0, by Horner-style nesting.
template <class T>
TruncatedTaylor<T> compose(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  if (!(b[0] == T{}))
    throw std::invalid_argument("compose: inner series must have zero constant term");
  const int n = std::min(a.order(), b.order());
  const TruncatedTaylor<T> bt = b.truncated(n);
  TruncatedTaylor<T> r = TruncatedTaylor<T>::constant(a[n], n);
  for (int j = n - 1; j >= 0; --j) {
    r = mul(r, bt);
    r.set(0, r[0] + a[j]);
  }
  return r;
}

/// Multiplicative inverse: solves a * r = 1 coefficient by coefficient.
template <class T>
TruncatedTaylor<T> reciprocal(const TruncatedTaylor<T>& a) {
  if (a[0] == T{})
    throw std::invalid_argument("reciprocal: constant term must be invertible (nonzero)");
  const int n = a.order();
  const T inv0 = ring_inverse(a[0]);
  TruncatedTaylor<T> r(n);
  r.set(0, inv0);
  for (int k = 1; k <= n; ++k) {
    T s{};
    for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r.set(k, T{} - inv0 * s);
  }
  return r;
}

/// Term-wise derivative; the order drops by one (a constant stays order 0).
template <class T>
TruncatedTaylor<T> derivative(const TruncatedTaylor<T>& a) {
  if (a.order() == 0) return TruncatedTaylor<T>(0);
  TruncatedTaylor<T> r(a.order() - 1);
  for (int k = 1; k <= a.order(); ++k) r.set(k - 1, a[k] * T(k));
  return r;
}

/// Multiply by z^s (s >= 0): coefficients shift up, order unchanged, the top
/// s coefficients fall off the truncation window.
template <class T>
TruncatedTaylor<T> shift_up(const TruncatedTaylor<T>& a, int s) {
  if (s < 0) throw std::invalid_argument("shift_up: negative shift");
  TruncatedTaylor<T> r(a.order());
  for (int k = s; k <= a.order(); ++k) r.set(k, a[k - s]);
  return r;
}

template <class T>
TruncatedTaylor<T> operator+(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  return add(a, b);
}
template <class T>
TruncatedTaylor<T> operator-(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  return sub(a, b);
}
template <class T>
TruncatedTaylor<T> operator*(const TruncatedTaylor<T>& a, const TruncatedTaylor<T>& b) {
  return mul(a, b);
}

/// Horner evaluation; meaningful for numeric coefficient types.
template <class T, class Z>
Z eval_at(const TruncatedTaylor<T>& a, const Z& z) {
  Z r = Z(a[a.order()]);
  for (int k = a.order() - 1; k >= 0; --k) r = r * z + Z(a[k]);
  return r;
}

// --------------------------------------------------------------------------
// Laurent windows

/// Validity sentinels: a coefficient index is "known" when it lies inside
/// [valid_lo, valid_hi].  kValidNegInf / kValidInf stand for "known all the
/// way down/up" (everything beyond the stored window is then a known zero).
inline constexpr long long kValidInf = std::numeric_limits<long long>::max() / 4;
inline constexpr long long kValidNegInf = -kValidInf;

/// Finite symmetric window of Laurent coefficients, powers z^-M .. z^+M,
/// plus an explicit validity interval marking which coefficients of the
/// represented series are exactly known.  Stored values outside the validity
/// interval are best-effort and must not be trusted.
template <class T>
class LaurentWindow {
 public:
  explicit LaurentWindow(int window) : window_(check_window(window)), coeffs_(2 * window + 1) {}

  int window() const { return window_; }
  long long valid_lo() const { return valid_lo_; }
  long long valid_hi() const { return valid_hi_; }
  bool valid_empty() const { return valid_lo_ > valid_hi_; }

  bool is_known(long long power) const { return power >= valid_lo_ && power <= valid_hi_; }

  /// Value at any power: stored inside the window, zero beyond it.
  T coeff(long long power) const {
    if (power < -window_ || power > window_) return T{};
    return coeffs_[static_cast<size_t>(power + window_)];
  }

  void set(int power, T v) {
    if (power < -window_ || power > window_)
      throw std::out_of_range("LaurentWindow: power outside window");
    coeffs_[static_cast<size_t>(power + window_)] = std::move(v);
  }

  void restrict_validity(long long lo, long long hi) {
    valid_lo_ = std::max(valid_lo_, lo);
    valid_hi_ = std::min(valid_hi_, hi);
  }

  friend bool operator==(const LaurentWindow& a, const LaurentWindow& b) {
    return a.window_ == b.window_ && a.coeffs_ == b.coeffs_ && a.valid_lo_ == b.valid_lo_ &&
           a.valid_hi_ == b.valid_hi_;
  }

 private:
  static int check_window(int w) {
    if (w < 0) throw std::invalid_argument("LaurentWindow: negative window");
    return w;
  }

  int window_;
  std::vector<T> coeffs_;
  long long valid_lo_ = kValidNegInf;
  long long valid_hi_ = kValidInf;
};

/// Convolution of two Laurent windows.  The result window is the sum of the
/// operand windows; its validity interval is the largest set of powers whose
/// coefficients are determined by known data alone, i.e. every unknown
/// position of one factor pairs only with positions where the other factor
/// is known to vanish (beyond its window, inside its validity range).
template <class T>
LaurentWindow<T> laurent_mul(const LaurentWindow<T>& a, const LaurentWindow<T>& b) {
  const int ma = a.window(), mb = b.window();
  LaurentWindow<T> r(ma + mb);
  for (int m = -(ma + mb); m <= ma + mb; ++m) {
    T s{};
    const int ilo = std::max(-ma, m - mb);
    const int ihi = std::min(ma, m + mb);
    for (int i = ilo; i <= ihi; ++i) s += a.coeff(i) * b.coeff(m - i);
    r.set(m, s);
  }

  long long lo = kValidNegInf, hi = kValidInf;
  bool empty = false;
  // Unknown upper tail of one factor must meet known zeros below the other
  // factor's window; this caps the validity from above.  Mirror image below.
  if (a.valid_hi() < kValidInf) {
    if (b.valid_lo() > kValidNegInf) empty = true;
    hi = std::min(hi, a.valid_hi() - mb);
  }
  if (b.valid_hi() < kValidInf) {
    if (a.valid_lo() > kValidNegInf) empty = true;
    hi = std::min(hi, b.valid_hi() - ma);
  }
  if (a.valid_lo() > kValidNegInf) {
    if (b.valid_hi() < kValidInf) empty = true;
    lo = std::max(lo, a.valid_lo() + mb);
  }
  if (b.valid_lo() > kValidNegInf) {
    if (a.valid_hi() < kValidInf) empty = true;
    lo = std::max(lo, b.valid_lo() + ma);
  }
  if (empty)
    r.restrict_validity(1, 0);
  else
    r.restrict_validity(lo, hi);
  return r;
}

}  // namespace lk
