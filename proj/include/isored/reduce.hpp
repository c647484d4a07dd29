#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isored/digraph.hpp"
#include "isored/error.hpp"
#include "isored/matrix.hpp"
#include "isored/rational_function.hpp"
#include "isored/structural.hpp"

namespace isored {

/// Elimination hit a vertex whose current loop weight is exactly λ. Carries
/// the vertex and the graph at the point where reduction became impossible.
class LambdaLoopError : public Error {
 public:
  LambdaLoopError(std::string vertex, WeightedDigraph at, const std::string& context = {})
      : Error(ErrorKind::LambdaLoop, (context.empty() ? "" : context + ": ") + "loop weight of vertex '" + vertex +
                                         "' is identically l; it cannot be eliminated"),
        vertex_(std::move(vertex)),
        graph_(std::make_shared<const WeightedDigraph>(std::move(at))) {}

  const std::string& vertex() const noexcept { return vertex_; }
  const WeightedDigraph& graph() const noexcept { return *graph_; }

 private:
  std::string vertex_;
  std::shared_ptr<const WeightedDigraph> graph_;
};

/// A removed vertex and its loop weight at the moment it was removed.
struct RemovedLoop {
  std::string vertex;
  RationalFunction loop_weight;
};

struct ReductionResult {
  WeightedDigraph reduced;
  /// One entry per removed vertex; feeds the correction set.
  std::vector<RemovedLoop> removed;
  /// The vertex sets reduced over, in order.
  std::vector<std::vector<std::string>> provenance;
};

/// Path-sum weight: product of every edge weight along p divided by
/// (λ − ω(e_uu)) for each interior vertex u.
inline RationalFunction path_weight(const WeightedDigraph& g, const SPath& p) {
  RationalFunction numerator(1L);
  for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
    const RationalFunction* w = g.weight(p.vertices[k], p.vertices[k + 1]);
    if (!w) throw Error(ErrorKind::UnknownVertex, "path uses a missing edge");
    numerator *= *w;
  }
  RationalFunction denominator(1L);
  const RationalFunction lambda = RationalFunction::lambda();
  for (std::size_t u : p.interior()) denominator *= lambda - g.loop_weight(u);
  return numerator / denominator;
}

/// R_S(G): the graph on S whose edge weights are the path-bundle sums.
inline ReductionResult reduce_structural(const WeightedDigraph& g, const StructuralSet& s) {
  PathBundle bundle = enumerate_bundle(g, s);
  std::vector<std::size_t> position(g.size(), 0);
  for (std::size_t k = 0; k < s.members().size(); ++k) position[s.members()[k]] = k;

  WeightedDigraph::EdgeMap edges;
  for (const auto& [key, paths] : bundle.by_pair()) {
    RationalFunction sum;
    for (const SPath& p : paths) sum += path_weight(g, p);
    edges.emplace(std::make_pair(position[key.first], position[key.second]), std::move(sum));
  }

  ReductionResult result;
  result.reduced = WeightedDigraph::from_indexed(s.member_labels(g), std::move(edges));
  for (std::size_t v : s.complement()) result.removed.push_back({g.label(v), g.loop_weight(v)});
  result.provenance.push_back(s.member_labels(g));
  return result;
}

inline ReductionResult reduce_structural(const WeightedDigraph& g, std::span<const std::string> subset) {
  return reduce_structural(g, StructuralSet::validate(g, subset));
}

/// Removes one vertex v: weight(i, j) += ω(e_iv)·ω(e_vj)/(λ − ω(e_vv)).
inline WeightedDigraph eliminate_vertex(const WeightedDigraph& g, std::size_t v) {
  const RationalFunction pivot = RationalFunction::lambda() - g.loop_weight(v);
  if (pivot.is_zero()) throw LambdaLoopError(g.label(v), g);

  std::vector<std::size_t> position(g.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0, k = 0; i < g.size(); ++i) {
    if (i == v) continue;
    position[i] = k++;
    labels.push_back(g.label(i));
  }

  WeightedDigraph::EdgeMap edges;
  for (const auto& [key, w] : g.edges()) {
    if (key.first == v || key.second == v) continue;
    edges.emplace(std::make_pair(position[key.first], position[key.second]), w);
  }
  const RationalFunction inv_pivot = RationalFunction(1L) / pivot;
  for (std::size_t i : g.predecessors(v)) {
    if (i == v) continue;
    const RationalFunction into = *g.weight(i, v) * inv_pivot;
    for (std::size_t j : g.successors(v)) {
      if (j == v) continue;
      edges[{position[i], position[j]}] += into * *g.weight(v, j);
    }
  }
  return WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
}

inline WeightedDigraph eliminate_vertex(const WeightedDigraph& g, std::string_view v) {
  return eliminate_vertex(g, g.index_of(v));
}

/// Reduces g onto `keep` by eliminating the other vertices one at a time,
/// in declaration order or in `order` when given (a permutation of V − keep).
inline ReductionResult reduce_subset(const WeightedDigraph& g, std::span<const std::string> keep,
                                     std::span<const std::string> order = {}) {
  if (keep.empty()) throw Error(ErrorKind::EmptySet, "cannot reduce onto the empty set");
  std::vector<std::size_t> kept = resolve_labels(g, keep);
  std::vector<bool> in_keep(g.size(), false);
  for (std::size_t i : kept) in_keep[i] = true;

  std::vector<std::string> sequence;
  if (order.empty()) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!in_keep[i]) sequence.push_back(g.label(i));
    }
  } else {
    std::vector<std::size_t> ordered = resolve_labels(g, order);
    for (std::size_t i : ordered) {
      if (in_keep[i]) throw Error(ErrorKind::Usage, "elimination order lists kept vertex '" + g.label(i) + "'");
    }
    if (ordered.size() + kept.size() != g.size()) {
      throw Error(ErrorKind::Usage, "elimination order must list every removed vertex exactly once");
    }
    sequence.assign(order.begin(), order.end());
  }

  ReductionResult result;
  WeightedDigraph current = g;
  for (const std::string& label : sequence) {
    std::size_t v = current.index_of(label);
    RationalFunction loop = current.loop_weight(v);
    current = eliminate_vertex(current, v);
    result.removed.push_back({label, std::move(loop)});
    result.provenance.push_back(current.labels());
  }
  result.reduced = std::move(current);
  if (result.provenance.empty()) result.provenance.push_back(result.reduced.labels());
  return result;
}

/// Independent check on reduce_structural: the Schur complement
/// A_SS + A_SS̄ (λI − A_S̄S̄)⁻¹ A_S̄S by Gauss–Jordan elimination over Q(λ).
inline AdjacencyMatrix schur_oracle(const WeightedDigraph& g, std::span<const std::string> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySet, "cannot reduce onto the empty set");
  std::vector<std::size_t> s = resolve_labels(g, subset);
  std::sort(s.begin(), s.end());
  std::vector<bool> in_s(g.size(), false);
  for (std::size_t i : s) in_s[i] = true;
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!in_s[i]) c.push_back(i);
  }
  const std::size_t ns = s.size();
  const std::size_t nc = c.size();

  AdjacencyMatrix result(ns, ns);
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) result(a, b) = g.weight_or_zero(s[a], s[b]);
  }
  if (nc == 0) return result;

  // Augmented system [λI − A_CC | A_CS].
  const RationalFunction lambda = RationalFunction::lambda();
  Matrix<RationalFunction> aug(nc, nc + ns);
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = 0; b < nc; ++b) {
      aug(a, b) = (a == b ? lambda : RationalFunction{}) - g.weight_or_zero(c[a], c[b]);
    }
    for (std::size_t b = 0; b < ns; ++b) aug(a, nc + b) = g.weight_or_zero(c[a], s[b]);
  }
  for (std::size_t col = 0; col < nc; ++col) {
    std::size_t pivot = col;
    while (pivot < nc && aug(pivot, col).is_zero()) ++pivot;
    if (pivot == nc) throw Error(ErrorKind::SingularBlock, "complement block is singular over Q(l)");
    aug.swap_rows(pivot, col);
    const RationalFunction inv = RationalFunction(1L) / aug(col, col);
    for (std::size_t b = col; b < nc + ns; ++b) aug(col, b) *= inv;
    for (std::size_t r = 0; r < nc; ++r) {
      if (r == col || aug(r, col).is_zero()) continue;
      const RationalFunction factor = aug(r, col);
      for (std::size_t b = col; b < nc + ns; ++b) {
        if (!aug(col, b).is_zero()) aug(r, b) -= factor * aug(col, b);
      }
    }
  }
  // result += A_SC · X, where X = aug[:, nc:].
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t k = 0; k < nc; ++k) {
      const RationalFunction* w = g.weight(s[a], c[k]);
      if (!w) continue;
      for (std::size_t b = 0; b < ns; ++b) {
        if (!aug(k, nc + b).is_zero()) result(a, b) += *w * aug(k, nc + b);
      }
    }
  }
  return result;
}

}  // namespace isored
