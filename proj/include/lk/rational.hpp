#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lk {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.  Every
/// algebraic identity checked against this type is an equality, not a
/// tolerance test.
class RationalComplex {
 public:
  RationalComplex() = default;
  RationalComplex(int v) : re_(v) {}
  RationalComplex(Rational re) : re_(std::move(re)) {}
  RationalComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static RationalComplex i() { return RationalComplex(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  RationalComplex conj() const { return RationalComplex(re_, -im_); }

  RationalComplex& operator+=(const RationalComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  RationalComplex& operator/=(const RationalComplex& o) {
    Rational d = o.re_ * o.re_ + o.im_ * o.im_;
    if (d == 0) throw std::domain_error("RationalComplex: division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
  friend RationalComplex operator-(const RationalComplex& a) {
    return RationalComplex(-a.re_, -a.im_);
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  /// Canonical text: "3", "-1/2", "2i", "(3+1/2i)", ...
  std::string str() const {
    auto rat = [](const Rational& q) {
      std::ostringstream os;
      os << q;
      return os.str();
    };
    if (im_ == 0) return rat(re_);
    if (re_ == 0) {
      if (im_ == 1) return "i";
      if (im_ == -1) return "-i";
      return rat(im_) + "i";
    }
    std::string s = "(" + rat(re_);
    if (im_ > 0) s += "+";
    if (im_ == 1)
      s += "i";
    else if (im_ == -1)
      s += "-i";
    else
      s += rat(im_) + "i";
    return s + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline RationalComplex ring_inverse(const RationalComplex& v) {
  if (v.is_zero()) throw std::domain_error("RationalComplex: inverse of zero");
  RationalComplex one(1);
  return one / v;
}

inline std::ostream& operator<<(std::ostream& os, const RationalComplex& v) {
  return os << v.str();
}

}  // namespace lk
