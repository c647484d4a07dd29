#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isored/digraph.hpp"
#include "isored/error.hpp"
#include "isored/polynomial.hpp"
#include "isored/rational_function.hpp"
#include "isored/reduce.hpp"
#include "isored/roots.hpp"

namespace isored {

inline constexpr double kDefaultPairingTolerance = 1e-8;
inline constexpr double kDefaultSolveTolerance = 1e-12;

/// det(M(G) − λI) = num/den, both monic and coprime. Eigenvalues are the
/// roots of num.
struct CharEquation {
  Polynomial num;
  Polynomial den;
};

namespace detail {

inline Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return Polynomial::exact_div(a * b, gcd(a, b)).monic();
}

// Fraction-free (Bareiss) determinant over Q[λ].
inline Polynomial bareiss_determinant(Matrix<Polynomial> m) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(1);
  bool negate = false;
  Polynomial previous = Polynomial::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m(r, k).is_zero()) ++r;
      if (r == n) return {};
      m.swap_rows(k, r);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = previous.is_one() ? std::move(t) : Polynomial::exact_div(t, previous);
      }
      m(i, k) = Polynomial{};
    }
    previous = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

}  // namespace detail

/// Exact characteristic equation: each row of M(G) − λI is cleared of
/// denominators by its lcm L_i, the polynomial determinant is taken by
/// fraction-free elimination, and the result divided by ∏ L_i.
inline CharEquation char_equation(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  const RationalFunction lambda = RationalFunction::lambda();
  Matrix<Polynomial> cleared(n, n);
  Polynomial scale = Polynomial::constant(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RationalFunction> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = g.weight_or_zero(i, j);
    row[i] -= lambda;
    Polynomial row_lcm = Polynomial::constant(1);
    for (const auto& entry : row) row_lcm = detail::lcm(row_lcm, entry.den());
    for (std::size_t j = 0; j < n; ++j) {
      cleared(i, j) = row[j].num() * Polynomial::exact_div(row_lcm, row[j].den());
    }
    scale = scale * row_lcm;
  }
  Polynomial det = detail::bareiss_determinant(std::move(cleared));
  if (det.is_zero()) return {Polynomial{}, Polynomial::constant(1)};
  RationalFunction value = RationalFunction::normalize(det, scale);
  return {value.num().monic(), value.den()};
}

struct Eigenvalue {
  Complex value;
  std::size_t multiplicity = 1;
};

/// Eigenvalues with multiplicities; distinct entries are farther apart than
/// tol. Entries are sorted by descending real part, then imaginary part.
struct SpectrumMultiset {
  std::vector<Eigenvalue> entries;
  double tol = kDefaultPairingTolerance;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.multiplicity;
    return n;
  }

  std::vector<Complex> expanded() const {
    std::vector<Complex> out;
    for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.value);
    return out;
  }

  static SpectrumMultiset from_values(std::span<const Complex> values, double tol) {
    SpectrumMultiset s;
    s.tol = tol;
    for (Complex v : values) s.insert(v, 1);
    s.sort();
    return s;
  }

  void insert(Complex v, std::size_t multiplicity) {
    for (auto& e : entries) {
      if (std::abs(e.value - v) <= tol) {
        e.multiplicity += multiplicity;
        return;
      }
    }
    entries.push_back({v, multiplicity});
  }

  void sort() {
    std::sort(entries.begin(), entries.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
      if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
      return a.value.imag() > b.value.imag();
    });
  }
};

/// σ(G): the roots of the characteristic equation, clustered at tol.
inline SpectrumMultiset spectrum(const WeightedDigraph& g, double tol = kDefaultPairingTolerance) {
  CharEquation eq = char_equation(g);
  if (eq.num.is_zero()) {
    throw Error(ErrorKind::IdenticallyZeroDeterminant, "det(M - lI) vanishes identically; every l is a solution");
  }
  SpectrumMultiset s;
  s.tol = tol;
  for (const Root& r : poly_roots_grouped(eq.num, kDefaultSolveTolerance)) s.insert(r.value, r.multiplicity);
  s.sort();
  return s;
}

/// σ(G,S): the spectral values a reduction may add or remove.
struct CorrectionSet {
  std::vector<Complex> values;
};

enum class LoopPolicy {
  /// Only constant loop weights are accepted (NonConstantLoop otherwise).
  Strict,
  /// A λ-dependent loop ω contributes the zeros of λ − ω and the poles of ω.
  Extended,
};

namespace detail {

inline void append_loop_correction(std::vector<Complex>& out, const RationalFunction& loop, LoopPolicy policy,
                                   const std::string& vertex) {
  if (auto c = loop.constant_value()) {
    out.emplace_back(c->get_d(), 0.0);
    return;
  }
  if (policy == LoopPolicy::Strict) {
    throw Error(ErrorKind::NonConstantLoop,
                "loop weight of '" + vertex + "' depends on l (" + loop.to_expression() + ")");
  }
  RationalFunction shifted = RationalFunction::lambda() - loop;
  for (Complex z : poly_roots(shifted.num(), kDefaultSolveTolerance)) out.push_back(z);
  for (Complex z : poly_roots(shifted.den(), kDefaultSolveTolerance)) out.push_back(z);
}

}  // namespace detail

/// One entry per vertex outside `subset`: its loop weight, 0 when loopless.
inline CorrectionSet correction_set(const WeightedDigraph& g, std::span<const std::string> subset,
                                    LoopPolicy policy = LoopPolicy::Strict) {
  std::vector<bool> in_set(g.size(), false);
  for (std::size_t i : resolve_labels(g, subset)) in_set[i] = true;
  CorrectionSet out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!in_set[i]) detail::append_loop_correction(out.values, g.loop_weight(i), policy, g.label(i));
  }
  return out;
}

/// Correction set of a finished reduction. The product of (λ − loop) over
/// the removed vertices is formed first, so pole/zero cancellations between
/// successive eliminations are taken into account; its zeros and poles are
/// the values the reduction may have added or removed.
inline CorrectionSet correction_set(const ReductionResult& result) {
  CorrectionSet out;
  RationalFunction product(1L);
  for (const RemovedLoop& r : result.removed) product *= RationalFunction::lambda() - r.loop_weight;
  for (Complex z : poly_roots(product.num(), kDefaultSolveTolerance)) out.values.push_back(z);
  for (Complex z : poly_roots(product.den(), kDefaultSolveTolerance)) out.values.push_back(z);
  return out;
}

struct MatchVerdict {
  bool match = true;
  std::vector<Complex> unexplained;
};

/// Pairs values of a and b within tol; whatever is left on either side must
/// be absorbed by a distinct correction entry. Unused corrections are fine.
inline MatchVerdict spectra_match(const SpectrumMultiset& a, const SpectrumMultiset& b, const CorrectionSet& corr,
                                  double tol = kDefaultPairingTolerance) {
  std::vector<Complex> left = a.expanded();
  std::vector<Complex> right = b.expanded();
  std::vector<bool> right_used(right.size(), false);
  std::vector<Complex> unpaired;

  for (Complex x : left) {
    std::size_t best = right.size();
    double best_dist = tol;
    for (std::size_t k = 0; k < right.size(); ++k) {
      if (right_used[k]) continue;
      double d = std::abs(right[k] - x);
      if (d <= best_dist) {
        best_dist = d;
        best = k;
      }
    }
    if (best == right.size()) {
      unpaired.push_back(x);
    } else {
      right_used[best] = true;
    }
  }
  for (std::size_t k = 0; k < right.size(); ++k) {
    if (!right_used[k]) unpaired.push_back(right[k]);
  }

  MatchVerdict verdict;
  std::vector<bool> corr_used(corr.values.size(), false);
  for (Complex x : unpaired) {
    bool absorbed = false;
    for (std::size_t k = 0; k < corr.values.size(); ++k) {
      if (!corr_used[k] && std::abs(corr.values[k] - x) <= tol) {
        corr_used[k] = true;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) verdict.unexplained.push_back(x);
  }
  verdict.match = verdict.unexplained.empty();
  return verdict;
}

}  // namespace isored
