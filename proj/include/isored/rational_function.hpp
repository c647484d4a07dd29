#pragma once

#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "isored/error.hpp"
#include "isored/polynomial.hpp"

namespace isored {

/// Raised by RationalFunction::eval when the denominator vanishes at z.
class PoleAtPoint : public Error {
 public:
  explicit PoleAtPoint(std::complex<double> z)
      : Error(ErrorKind::PoleAtPoint, describe(z)), point_(z) {}

  std::complex<double> point() const noexcept { return point_; }

 private:
  static std::string describe(std::complex<double> z) {
    std::ostringstream os;
    os << "pole at (" << z.real() << "," << z.imag() << ")";
    return os.str();
  }

  std::complex<double> point_;
};

/// An element of Q(λ), held in canonical form: numerator and denominator
/// coprime, denominator monic. Zero is 0/1. Value equality is therefore
/// representation equality.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}

  RationalFunction(const Polynomial& p)  // NOLINT(google-explicit-constructor)
      : num_(p), den_(Polynomial::constant(1)) {}

  RationalFunction(long c)  // NOLINT(google-explicit-constructor)
      : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}

  explicit RationalFunction(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}

  static RationalFunction lambda() { return RationalFunction(Polynomial::lambda()); }

  static RationalFunction normalize(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    RationalFunction out;
    if (num.is_zero()) return out;
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = Polynomial::exact_div(num, g);
      den = Polynomial::exact_div(den, g);
    }
    Rational lead = den.leading();
    if (lead != 1) {
      Rational inv = 1 / lead;
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
    out.num_ = std::move(num);
    out.den_ = std::move(den);
    return out;
  }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  std::optional<Rational> constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.coeff(0);
  }

  RationalFunction operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return normalize(a.num_ + b.num_, a.den_);
    return normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
    return normalize(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
    return normalize(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  /// Nonnegative integer power.
  RationalFunction pow(unsigned exponent) const {
    RationalFunction result(1L);
    RationalFunction base = *this;
    while (exponent > 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent > 0) base *= base;
    }
    return result;
  }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> d = den_.eval(z);
    if (d == std::complex<double>(0.0, 0.0)) throw PoleAtPoint(z);
    return num_.eval(z) / d;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  /// Canonical weight expression, e.g. "(l^2+2*l+1)/l^4" or "1/l".
  std::string to_expression() const {
    std::string num = num_.to_expression();
    if (den_.is_one()) return num;
    if (num_.term_count() > 1) num = "(" + num + ")";
    std::string den = den_.to_expression();
    if (den_.term_count() > 1) den = "(" + den + ")";
    return num + "/" + den;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace isored
