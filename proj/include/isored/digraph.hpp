#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isored/error.hpp"
#include "isored/expression.hpp"
#include "isored/matrix.hpp"
#include "isored/rational_function.hpp"

namespace isored {

/// One directed edge in label form, as read from or written to a document.
struct EdgeSpec {
  std::string from;
  std::string to;
  RationalFunction weight;
};

using AdjacencyMatrix = Matrix<RationalFunction>;

/// Weighted directed graph G = (V, E, ω). Vertices keep their declaration
/// order; at most one edge per ordered pair; every stored weight is nonzero
/// (an absent edge has weight 0). Loops are allowed. Immutable once built.
class WeightedDigraph {
 public:
  using EdgeMap = std::map<std::pair<std::size_t, std::size_t>, RationalFunction>;

  WeightedDigraph() = default;

  /// Parallel edges are summed; edges summing to zero are dropped.
  static WeightedDigraph build(std::vector<std::string> vertices, std::span<const EdgeSpec> edges) {
    WeightedDigraph g(std::move(vertices));
    EdgeMap map;
    for (const EdgeSpec& e : edges) {
      auto key = std::make_pair(g.index_of(e.from), g.index_of(e.to));
      map[key] += e.weight;
    }
    g.set_edges(std::move(map));
    return g;
  }

  /// Convenience overload taking weight expressions.
  static WeightedDigraph build(std::vector<std::string> vertices,
                               std::initializer_list<std::tuple<std::string, std::string, std::string>> edges) {
    std::vector<EdgeSpec> specs;
    for (const auto& [from, to, weight] : edges) specs.push_back({from, to, parse_weight(weight)});
    return build(std::move(vertices), specs);
  }

  /// Index-keyed construction; zero weights are dropped.
  static WeightedDigraph from_indexed(std::vector<std::string> vertices, EdgeMap edges) {
    WeightedDigraph g(std::move(vertices));
    for (const auto& [key, w] : edges) {
      if (key.first >= g.size() || key.second >= g.size()) {
        throw Error(ErrorKind::UnknownVertex, "edge endpoint index out of range");
      }
    }
    g.set_edges(std::move(edges));
    return g;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view label) const {
    auto i = find(label);
    if (!i) throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(label) + "'");
    return *i;
  }

  const EdgeMap& edges() const noexcept { return edges_; }

  /// Weight of e_ij or nullptr when absent.
  const RationalFunction* weight(std::size_t i, std::size_t j) const {
    auto it = edges_.find({i, j});
    return it == edges_.end() ? nullptr : &it->second;
  }

  RationalFunction weight_or_zero(std::size_t i, std::size_t j) const {
    const RationalFunction* w = weight(i, j);
    return w ? *w : RationalFunction{};
  }

  bool has_loop(std::size_t i) const { return weight(i, i) != nullptr; }
  RationalFunction loop_weight(std::size_t i) const { return weight_or_zero(i, i); }

  const std::vector<std::size_t>& successors(std::size_t i) const { return successors_.at(i); }
  const std::vector<std::size_t>& predecessors(std::size_t i) const { return predecessors_.at(i); }

  std::vector<EdgeSpec> edge_list() const {
    std::vector<EdgeSpec> out;
    out.reserve(edges_.size());
    for (const auto& [key, w] : edges_) out.push_back({labels_[key.first], labels_[key.second], w});
    return out;
  }

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }
  friend bool operator!=(const WeightedDigraph& a, const WeightedDigraph& b) { return !(a == b); }

 private:
  explicit WeightedDigraph(std::vector<std::string> vertices) : labels_(std::move(vertices)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw Error(ErrorKind::UnknownVertex, "empty vertex label");
      if (!index_.emplace(labels_[i], i).second) {
        throw Error(ErrorKind::DuplicateVertex, "duplicate vertex '" + labels_[i] + "'");
      }
    }
  }

  void set_edges(EdgeMap edges) {
    std::erase_if(edges, [](const auto& kv) { return kv.second.is_zero(); });
    edges_ = std::move(edges);
    successors_.assign(labels_.size(), {});
    predecessors_.assign(labels_.size(), {});
    for (const auto& [key, w] : edges_) {
      successors_[key.first].push_back(key.second);
      predecessors_[key.second].push_back(key.first);
    }
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  EdgeMap edges_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<std::size_t>> predecessors_;
};

/// M(G): entry (i, j) is the weight of e_ij, zero when absent.
inline AdjacencyMatrix adjacency(const WeightedDigraph& g) {
  AdjacencyMatrix m(g.size(), g.size());
  for (const auto& [key, w] : g.edges()) m(key.first, key.second) = w;
  return m;
}

struct DegreeRecord {
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  bool has_loop = false;

  friend bool operator==(const DegreeRecord&, const DegreeRecord&) = default;
};

/// Edge counts per vertex; a loop counts once as in and once as out.
inline std::vector<DegreeRecord> degree_stats(const WeightedDigraph& g) {
  std::vector<DegreeRecord> out(g.size());
  for (const auto& [key, w] : g.edges()) {
    ++out[key.first].out_degree;
    ++out[key.second].in_degree;
    if (key.first == key.second) out[key.first].has_loop = true;
  }
  return out;
}

/// The same graph with vertices listed in `order` (a permutation of indices).
inline WeightedDigraph permuted(const WeightedDigraph& g, std::span<const std::size_t> order) {
  std::vector<std::size_t> position(g.size());
  std::vector<std::string> labels;
  labels.reserve(g.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    position.at(order[k]) = k;
    labels.push_back(g.label(order[k]));
  }
  WeightedDigraph::EdgeMap edges;
  for (const auto& [key, w] : g.edges()) edges.emplace(std::make_pair(position[key.first], position[key.second]), w);
  return WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
}

/// Subgraph induced on `keep` (indices), preserving relative order.
inline WeightedDigraph induced_subgraph(const WeightedDigraph& g, std::span<const std::size_t> keep) {
  std::vector<std::size_t> position(g.size(), g.size());
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    position[keep[k]] = k;
    labels.push_back(g.label(keep[k]));
  }
  WeightedDigraph::EdgeMap edges;
  for (const auto& [key, w] : g.edges()) {
    if (position[key.first] < g.size() && position[key.second] < g.size()) {
      edges.emplace(std::make_pair(position[key.first], position[key.second]), w);
    }
  }
  return WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
}

/// Resolves labels to indices, rejecting unknown and repeated labels.
inline std::vector<std::size_t> resolve_labels(const WeightedDigraph& g, std::span<const std::string> labels) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(g.size(), false);
  for (const auto& label : labels) {
    std::size_t i = g.index_of(label);
    if (seen[i]) throw Error(ErrorKind::DuplicateVertex, "vertex '" + label + "' listed twice");
    seen[i] = true;
    out.push_back(i);
  }
  return out;
}

}  // namespace isored
