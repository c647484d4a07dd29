#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isored/error.hpp"

namespace isored {

using Rational = mpq_class;

/// Polynomials above this degree are refused. Reductions grow degrees, so a
/// hard cap turns runaway growth into a diagnosable error.
inline constexpr std::size_t kMaxDegree = 512;

/// Univariate polynomial in the spectral parameter with exact rational
/// coefficients. coeffs()[k] multiplies λ^k; the highest stored coefficient
/// is never zero, and the zero polynomial stores nothing.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

  static Polynomial monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> coeffs(power + 1);
    coeffs[power] = c;
    return Polynomial(std::move(coeffs));
  }

  /// The polynomial λ.
  static Polynomial lambda() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  /// Leading coefficient; zero for the zero polynomial.
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.coeffs_.size() + b.coeffs_.size() - 2 > kMaxDegree) degree_overflow(a.coeffs_.size() + b.coeffs_.size() - 2);
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }

  Polynomial scaled(const Rational& s) const {
    if (s == 0) return {};
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  /// Leading coefficient 1 (zero stays zero).
  Polynomial monic() const {
    if (is_zero() || leading() == 1) return *this;
    Rational inv = 1 / leading();
    return scaled(inv);
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
    return Polynomial(std::move(out));
  }

  /// Euclidean division: returns (quotient, remainder).
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.coeffs_.size() < b.coeffs_.size()) return {Polynomial{}, a};
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
    const Rational inv_lead = 1 / b.leading();
    const std::size_t db = b.coeffs_.size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
      Rational q = rem[k + db] * inv_lead;
      if (sgn(q) == 0) continue;
      quot[k] = q;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Exact quotient; throws if b does not divide a.
  static Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error(ErrorKind::DivisionByZero, "inexact polynomial division");
    return q;
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
  }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k].get_d();
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Rendering in the weight-expression grammar, e.g. "l^2+2*l+1".
  std::string to_expression() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Rational& c = coeffs_[k];
      if (sgn(c) == 0) continue;
      Rational mag = abs(c);
      if (sgn(c) < 0) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      if (k == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "l";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

  /// Number of nonzero terms.
  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& c : coeffs_) n += sgn(c) != 0;
    return n;
  }

 private:
  [[noreturn]] static void degree_overflow(std::size_t degree) {
    throw Error(ErrorKind::DegreeCapExceeded,
                "polynomial degree " + std::to_string(degree) + " exceeds cap " + std::to_string(kMaxDegree));
  }

  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    if (coeffs_.size() > kMaxDegree + 1) degree_overflow(coeffs_.size() - 1);
  }

  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = Polynomial::divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace isored
