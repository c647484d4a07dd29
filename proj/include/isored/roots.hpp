#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "isored/error.hpp"
#include "isored/polynomial.hpp"

namespace isored {

using Complex = std::complex<double>;

class RootFindingFailed : public Error {
 public:
  explicit RootFindingFailed(std::vector<double> residuals)
      : Error(ErrorKind::RootFindingFailed, describe(residuals)), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  static std::string describe(const std::vector<double>& r) {
    std::ostringstream os;
    os << "root finding did not converge; max residual "
       << (r.empty() ? 0.0 : *std::max_element(r.begin(), r.end()));
    return os.str();
  }

  std::vector<double> residuals_;
};

/// A root together with its multiplicity in the polynomial it came from.
struct Root {
  Complex value;
  std::size_t multiplicity = 1;
  bool exact = false;  // extracted as an exact rational
};

/// Yun's square-free decomposition of a nonconstant polynomial:
/// p / lead(p) = prod_i factors[i]^(i+1), factors pairwise coprime, monic.
inline std::vector<Polynomial> square_free_decomposition(const Polynomial& p) {
  std::vector<Polynomial> factors;
  Polynomial f = p.monic();
  Polynomial df = f.derivative();
  Polynomial b = gcd(f, df);
  Polynomial c = Polynomial::exact_div(f, b);
  Polynomial d = Polynomial::exact_div(df, b) - c.derivative();
  while (!c.is_one()) {
    Polynomial a = gcd(c, d);
    factors.push_back(a);
    c = Polynomial::exact_div(c, a);
    d = Polynomial::exact_div(d, a) - c.derivative();
  }
  return factors;
}

namespace detail {

// Divisors of |n| for modest n; empty when n is too large to enumerate.
inline std::vector<std::uint64_t> small_divisors(const mpz_class& n) {
  static const mpz_class kLimit("1000000000000");
  mpz_class m = abs(n);
  if (m == 0 || m > kLimit) return {};
  std::uint64_t v = m.get_ui();
  if (sizeof(unsigned long) < 8) return {};
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t k = 1; k * k <= v; ++k) {
    if (v % k != 0) continue;
    low.push_back(k);
    if (k != v / k) high.push_back(v / k);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

// Removes the exact rational roots of a square-free polynomial, returning them
// and leaving the cofactor in `p`.
inline std::vector<Rational> extract_rational_roots(Polynomial& p) {
  std::vector<Rational> roots;
  if (!p.degree() || *p.degree() == 0) return roots;
  while (p.coeff(0) == 0) {
    roots.emplace_back(0);
    p = Polynomial::exact_div(p, Polynomial::lambda());
  }
  if (*p.degree() == 0) return roots;

  // Integer-coefficient copy for the divisor test.
  mpz_class denom_lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_class trailing = Rational(p.coeff(0) * denom_lcm).get_num();
  mpz_class leading = Rational(p.leading() * denom_lcm).get_num();

  auto numerators = small_divisors(trailing);
  auto denominators = small_divisors(leading);
  constexpr std::size_t kMaxCandidates = 20000;
  if (numerators.empty() || denominators.empty() || numerators.size() * denominators.size() > kMaxCandidates) {
    return roots;
  }
  for (std::uint64_t den : denominators) {
    for (std::uint64_t num : numerators) {
      for (int sign : {1, -1}) {
        if (*p.degree() == 0) return roots;
        Rational candidate(mpz_class(static_cast<unsigned long>(num)) * sign, mpz_class(static_cast<unsigned long>(den)));
        candidate.canonicalize();
        if (candidate.get_den() != den) continue;  // already tried in lowest terms
        if (p.eval(candidate) != 0) continue;
        roots.push_back(candidate);
        p = Polynomial::exact_div(p, Polynomial(std::vector<Rational>{-candidate, 1}));
      }
    }
  }
  return roots;
}

// Aberth-Ehrlich simultaneous iteration on a square-free polynomial with
// double coefficients (low to high, monic).
inline std::vector<Complex> aberth(const std::vector<Complex>& coeffs, double tol) {
  const std::size_t n = coeffs.size() - 1;
  auto horner = [&](Complex z, Complex& value, Complex& deriv) {
    value = coeffs[n];
    deriv = 0;
    for (std::size_t k = n; k-- > 0;) {
      deriv = deriv * z + value;
      value = value * z + coeffs[k];
    }
  };

  // Fujiwara bound on root moduli.
  double bound = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    double term = std::pow(std::abs(coeffs[n - k]), 1.0 / static_cast<double>(k));
    if (k == n) term = std::pow(std::abs(coeffs[0]) / 2.0, 1.0 / static_cast<double>(n));
    bound = std::max(bound, term);
  }
  double radius = std::max(2.0 * bound, 1e-3);

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius * (0.5 + 0.5 * static_cast<double>(k + 1) / static_cast<double>(n)), angle);
  }

  constexpr int kMaxIterations = 2000;
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex value, deriv;
      horner(z[k], value, deriv);
      if (value == Complex(0, 0)) {
        done[k] = true;
        continue;
      }
      Complex ratio = value / deriv;
      Complex repulsion = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[k] -= step;
      if (std::abs(step) <= tol * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  return z;
}

inline double relative_residual(const Polynomial& p, Complex z) {
  Complex value = 0;
  double scale = 0;
  double mod = std::abs(z);
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    double c = p.coeffs()[k].get_d();
    value = value * z + c;
    scale = scale * mod + std::abs(c);
  }
  return scale == 0 ? 0 : std::abs(value) / scale;
}

// Newton polishing in long double against the exact coefficients.
inline Complex polish(const Polynomial& p, Complex z) {
  using LComplex = std::complex<long double>;
  std::vector<long double> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(static_cast<long double>(q.get_d()));
  LComplex w(z.real(), z.imag());
  for (int iter = 0; iter < 3; ++iter) {
    LComplex value = c.back();
    LComplex deriv = 0;
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      deriv = deriv * w + value;
      value = value * w + c[k];
    }
    if (deriv == LComplex(0, 0)) break;
    LComplex step = value / deriv;
    w -= step;
    if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(w))) break;
  }
  return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

// Roots of a square-free polynomial, each with multiplicity 1.
inline std::vector<Root> square_free_roots(Polynomial p, double tol) {
  std::vector<Root> out;
  for (const Rational& r : extract_rational_roots(p)) out.push_back({Complex(r.get_d(), 0.0), 1, true});
  if (!p.degree() || *p.degree() == 0) return out;

  Polynomial monic = p.monic();
  if (*monic.degree() == 1) {
    out.push_back({Complex(-monic.coeff(0).get_d(), 0.0), 1, false});
    return out;
  }
  std::vector<Complex> coeffs;
  for (const auto& c : monic.coeffs()) coeffs.emplace_back(c.get_d(), 0.0);
  std::vector<Complex> z = aberth(coeffs, tol);

  std::vector<double> residuals;
  bool failed = false;
  for (auto& root : z) {
    root = polish(monic, root);
    double res = relative_residual(monic, root);
    residuals.push_back(res);
    if (!(res <= 1e-9)) failed = true;
    // Real coefficients: snap numerically real roots onto the axis.
    if (std::abs(root.imag()) <= 1e3 * tol * std::max(1.0, std::abs(root.real()))) {
      Complex snapped(root.real(), 0.0);
      if (relative_residual(monic, snapped) <= std::max(res, 1e-15) * 10) root = snapped;
    }
    out.push_back({root, 1, false});
  }
  if (failed) throw RootFindingFailed(std::move(residuals));
  return out;
}

}  // namespace detail

/// All roots of a nonzero polynomial, grouped with their multiplicities.
/// Exact rational roots are split off first; the rest are found by
/// simultaneous iteration on each square-free factor.
inline std::vector<Root> poly_roots_grouped(const Polynomial& p, double tol = 1e-12) {
  if (p.is_zero()) throw Error(ErrorKind::RootFindingFailed, "roots of the zero polynomial are undefined");
  std::vector<Root> out;
  if (*p.degree() == 0) return out;
  auto factors = square_free_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].is_one()) continue;
    for (Root r : detail::square_free_roots(factors[i], tol)) {
      r.multiplicity = i + 1;
      out.push_back(r);
    }
  }
  return out;
}

/// Roots with multiplicity, one list entry per root copy.
inline std::vector<Complex> poly_roots(const Polynomial& p, double tol = 1e-12) {
  std::vector<Complex> out;
  for (const Root& r : poly_roots_grouped(p, tol)) out.insert(out.end(), r.multiplicity, r.value);
  return out;
}

}  // namespace isored
