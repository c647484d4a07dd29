#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "isored/digraph.hpp"
#include "isored/error.hpp"
#include "isored/rational_function.hpp"
#include "isored/structural.hpp"

namespace isored {

namespace detail {

// A label not yet in `taken`, built from `base` and `suffix`.
inline std::string fresh_label(std::unordered_set<std::string>& taken, const std::string& base,
                               const std::string& suffix) {
  std::string label = base + suffix;
  while (taken.count(label)) label += "'";
  taken.insert(label);
  return label;
}

inline RationalFunction path_product(const WeightedDigraph& g, const SPath& p) {
  RationalFunction product(1L);
  for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) product *= *g.weight(p.vertices[k], p.vertices[k + 1]);
  return product;
}

}  // namespace detail

/// L_S(G): reduction that keeps edge weights inside the unital ring spanned
/// by the original weights. Each bundle path is reweighted so its first edge
/// carries the path product and every later edge carries 1; interior
/// vertices of paths ending at the same terminal are merged position-wise
/// from the path end, giving one weight-1 chain per terminal; entry edges
/// with the same source and chain position are summed. The complement must
/// be loopless.
inline WeightedDigraph fixed_weight_reduce(const WeightedDigraph& g, const StructuralSet& s) {
  for (std::size_t v : s.complement()) {
    if (g.has_loop(v)) {
      throw Error(ErrorKind::LoopInComplement, "vertex '" + g.label(v) + "' outside the set has a loop");
    }
  }
  PathBundle bundle = enumerate_bundle(g, s);

  // Longest interior run per terminal decides its chain length.
  std::map<std::size_t, std::size_t> chain_length;
  for (const SPath& p : bundle.all()) {
    std::size_t& len = chain_length[p.target()];
    len = std::max(len, p.interior_count());
  }

  std::vector<std::string> labels = s.member_labels(g);
  std::unordered_set<std::string> taken(g.labels().begin(), g.labels().end());
  std::vector<std::size_t> position(g.size(), 0);
  for (std::size_t k = 0; k < s.members().size(); ++k) position[s.members()[k]] = k;

  // chain_node[(terminal, depth)], depth 1 = adjacent to the terminal.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> chain_node;
  WeightedDigraph::EdgeMap edges;
  for (std::size_t terminal : s.members()) {
    auto it = chain_length.find(terminal);
    if (it == chain_length.end()) continue;
    for (std::size_t depth = 1; depth <= it->second; ++depth) {
      chain_node[{terminal, depth}] = labels.size();
      labels.push_back(detail::fresh_label(taken, g.label(terminal), "~" + std::to_string(depth)));
      std::size_t next = depth == 1 ? position[terminal] : chain_node[{terminal, depth - 1}];
      edges[{labels.size() - 1, next}] = RationalFunction(1L);
    }
  }

  for (const SPath& p : bundle.all()) {
    std::size_t from = position[p.source()];
    std::size_t to = p.interior_count() == 0 ? position[p.target()] : chain_node.at({p.target(), p.interior_count()});
    edges[{from, to}] += detail::path_product(g, p);
  }
  return WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
}

struct ClosureVerdict {
  /// Every reduced weight was shown to be a sum of products of original weights and 1.
  bool closed = true;
  /// The reduced graph has fewer vertices than the original.
  bool fewer_vertices = false;
  /// Edges whose weight is provably outside the generated set.
  std::vector<std::string> violations;
  /// Edges the bounded search could neither confirm nor refute.
  std::vector<std::string> undetermined;

  bool is_reduction_over_ring() const { return closed && fewer_vertices; }
};

namespace detail {

enum class Membership { Yes, No, Unknown };

class SemiringMembership {
 public:
  SemiringMembership(std::vector<RationalFunction> generators, std::size_t max_degree) {
    generators.push_back(RationalFunction(1L));
    for (auto& gen : generators) {
      if (std::find(generators_.begin(), generators_.end(), gen) == generators_.end()) generators_.push_back(gen);
    }
    all_integer_ = std::all_of(generators_.begin(), generators_.end(), [](const auto& w) {
      return w.is_constant() && w.constant_value()->get_den() == 1;
    });
    all_nonnegative_ = std::all_of(generators_.begin(), generators_.end(), [](const auto& w) {
      return w.is_polynomial() && nonnegative(w.num());
    });
    build_monomials(max_degree);
  }

  Membership contains(const RationalFunction& target) const {
    if (std::find(generators_.begin(), generators_.end(), target) != generators_.end()) return Membership::Yes;
    if (all_integer_ && target.is_constant()) {
      const Rational t = *target.constant_value();
      if (t.get_den() != 1) return Membership::No;
      bool has_negative = std::any_of(generators_.begin(), generators_.end(),
                                      [](const auto& w) { return sgn(*w.constant_value()) < 0; });
      return (sgn(t) > 0 || has_negative) ? Membership::Yes : Membership::No;
    }
    // Sums of products of polynomials with nonnegative coefficients stay such polynomials.
    if (all_nonnegative_ && (target.is_zero() || !target.is_polynomial() || !nonnegative(target.num()))) {
      return Membership::No;
    }

    budget_ = kNodeBudget;
    bool exhausted_cleanly = true;
    if (search(target, 0, kMaxTerms, exhausted_cleanly)) return Membership::Yes;
    if (exhausted_cleanly && all_nonnegative_) {
      // Every term is worth at least the smallest monomial at l = 1, so kMaxTerms
      // bounds the search when target(1) / smallest(1) <= kMaxTerms.
      Rational smallest = monomials_.front().num().eval(Rational(1));
      for (const auto& m : monomials_) smallest = std::min(smallest, m.num().eval(Rational(1)));
      if (target.num().eval(Rational(1)) / smallest <= kMaxTerms) return Membership::No;
    }
    return Membership::Unknown;
  }

 private:
  static constexpr std::size_t kMaxMonomials = 256;
  static constexpr std::size_t kMaxTerms = 48;
  static constexpr long kNodeBudget = 200000;

  static bool nonnegative(const Polynomial& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rational& c) { return sgn(c) >= 0; });
  }

  // Coefficient-wise m <= rest; only meaningful when both are nonnegative polynomials.
  static bool fits(const RationalFunction& m, const RationalFunction& rest) {
    const Polynomial& a = m.num();
    const Polynomial& b = rest.num();
    if (*a.degree() > *b.degree()) return false;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
      if (a.coeffs()[k] > b.coeff(k)) return false;
    }
    return true;
  }

  void build_monomials(std::size_t max_degree) {
    std::vector<RationalFunction> frontier{RationalFunction(1L)};
    monomials_ = frontier;
    for (std::size_t d = 1; d <= max_degree && monomials_.size() < kMaxMonomials; ++d) {
      std::vector<RationalFunction> next;
      for (const auto& m : frontier) {
        for (const auto& gen : generators_) {
          if (gen.is_one()) continue;
          RationalFunction product = m * gen;
          if (std::find(monomials_.begin(), monomials_.end(), product) != monomials_.end()) continue;
          monomials_.push_back(product);
          next.push_back(std::move(product));
          if (monomials_.size() >= kMaxMonomials) break;
        }
        if (monomials_.size() >= kMaxMonomials) break;
      }
      if (next.empty()) break;
      frontier = std::move(next);
    }
    // Larger terms first so the coefficient bound prunes early.
    std::reverse(monomials_.begin(), monomials_.end());
  }

  // Is `rest` a sum of at most `terms` monomials with index >= `from`?
  bool search(const RationalFunction& rest, std::size_t from, std::size_t terms, bool& clean) const {
    if (rest.is_zero()) return true;
    if (terms == 0) return false;
    if (--budget_ < 0) {
      clean = false;
      return false;
    }
    for (std::size_t k = from; k < monomials_.size(); ++k) {
      if (all_nonnegative_ && !fits(monomials_[k], rest)) continue;
      if (search(rest - monomials_[k], k, terms - 1, clean)) return true;
      if (budget_ < 0) return false;
    }
    return false;
  }

  std::vector<RationalFunction> generators_;
  std::vector<RationalFunction> monomials_;
  bool all_integer_ = false;
  bool all_nonnegative_ = false;
  mutable long budget_ = 0;
};

}  // namespace detail

/// Checks that every weight of `reduced` lies in the unital ring (sums of
/// products, plus 1) generated by the weights of g, and whether the reduced
/// graph is smaller than g.
inline ClosureVerdict weight_set_closure_check(const WeightedDigraph& g, const WeightedDigraph& reduced) {
  std::vector<RationalFunction> generators;
  for (const auto& [key, w] : g.edges()) generators.push_back(w);
  detail::SemiringMembership ring(std::move(generators), std::max<std::size_t>(g.size(), 1));

  ClosureVerdict verdict;
  verdict.fewer_vertices = reduced.size() < g.size();
  for (const auto& [key, w] : reduced.edges()) {
    std::string where = reduced.label(key.first) + "->" + reduced.label(key.second) + ": " + w.to_expression();
    switch (ring.contains(w)) {
      case detail::Membership::Yes: break;
      case detail::Membership::No:
        verdict.closed = false;
        verdict.violations.push_back(std::move(where));
        break;
      case detail::Membership::Unknown:
        verdict.closed = false;
        verdict.undetermined.push_back(std::move(where));
        break;
    }
  }
  return verdict;
}

struct ExpansionReport {
  WeightedDigraph expanded;
  /// Eigenvalues added by the expansion: n_i − 1 copies of ω(e_ii) per
  /// complement vertex lying on n_i bundle paths.
  std::vector<RationalFunction> delta;
  /// n_i for every complement vertex on at least one bundle path.
  std::map<std::string, std::size_t> path_counts;
};

/// X_S(G): every bundle path gets private copies of its interior vertices
/// (loops included), so bundle paths become pairwise independent. S, its
/// direct edges and vertices on a single path are shared unchanged.
inline ExpansionReport expand(const WeightedDigraph& g, const StructuralSet& s) {
  const std::vector<SPath> paths = enumerate_bundle(g, s).all();
  std::vector<std::size_t> uses(g.size(), 0);
  for (const SPath& p : paths) {
    for (std::size_t u : p.interior()) ++uses[u];
  }

  // Copies are laid out in original vertex order; copy 0 keeps the label.
  std::vector<std::vector<std::size_t>> copies(g.size());
  std::vector<std::size_t> origin;
  std::vector<std::string> labels;
  std::unordered_set<std::string> taken(g.labels().begin(), g.labels().end());
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::size_t count = std::max<std::size_t>(uses[v], 1);
    for (std::size_t c = 0; c < count; ++c) {
      copies[v].push_back(labels.size());
      origin.push_back(v);
      labels.push_back(c == 0 ? g.label(v) : detail::fresh_label(taken, g.label(v), "#" + std::to_string(c + 1)));
    }
  }

  WeightedDigraph::EdgeMap edges;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (g.has_loop(origin[k])) edges[{k, k}] = g.loop_weight(origin[k]);
  }
  // Edges between vertices that keep a single copy carry over as they are.
  for (const auto& [key, w] : g.edges()) {
    if (key.first != key.second && copies[key.first].size() == 1 && copies[key.second].size() == 1) {
      edges[{copies[key.first][0], copies[key.second][0]}] = w;
    }
  }
  std::vector<std::size_t> next_copy(g.size(), 0);
  for (const SPath& p : paths) {
    std::vector<std::size_t> image;
    for (std::size_t idx = 0; idx < p.vertices.size(); ++idx) {
      std::size_t v = p.vertices[idx];
      bool interior = idx > 0 && idx + 1 < p.vertices.size();
      image.push_back(interior ? copies[v][next_copy[v]++] : copies[v][0]);
    }
    for (std::size_t k = 0; k + 1 < image.size(); ++k) {
      edges[{image[k], image[k + 1]}] = *g.weight(p.vertices[k], p.vertices[k + 1]);
    }
  }

  ExpansionReport report;
  report.expanded = WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (uses[v] == 0) continue;
    report.path_counts[g.label(v)] = uses[v];
    for (std::size_t c = 1; c < uses[v]; ++c) report.delta.push_back(g.loop_weight(v));
  }
  return report;
}

/// True iff g has two distinct non-loop cycles sharing a vertex, i.e. some
/// strongly connected component of ℓ(G) has more edges than vertices.
inline bool sparsifiable(const WeightedDigraph& g) {
  std::vector<bool> all(g.size(), true);
  std::vector<std::size_t> component_of(g.size(), 0);
  auto components = strongly_connected_components(g, all);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t v : components[c]) component_of[v] = c;
  }
  std::vector<std::size_t> internal_edges(components.size(), 0);
  for (const auto& [key, w] : g.edges()) {
    if (key.first != key.second && component_of[key.first] == component_of[key.second]) {
      ++internal_edges[component_of[key.first]];
    }
  }
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (components[c].size() >= 2 && internal_edges[c] > components[c].size()) return true;
  }
  return false;
}

}  // namespace isored
