#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isored/digraph.hpp"
#include "isored/error.hpp"

namespace isored {

/// ℓ(G): the graph with every loop removed.
inline WeightedDigraph strip_loops(const WeightedDigraph& g) {
  WeightedDigraph::EdgeMap edges;
  for (const auto& [key, w] : g.edges()) {
    if (key.first != key.second) edges.emplace(key, w);
  }
  return WeightedDigraph::from_indexed(g.labels(), std::move(edges));
}

/// Strongly connected components of the subgraph induced on `active`,
/// ignoring loops. Iterative Tarjan; components come out in reverse
/// topological order.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g,
                                                                           const std::vector<bool>& active) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (!active[root] || index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& frame = call.back();
      const std::size_t v = frame.vertex;
      const auto& succ = g.successors(v);
      if (frame.next_edge < succ.size()) {
        std::size_t w = succ[frame.next_edge++];
        if (w == v || !active[w]) continue;
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return components;
}

struct StructuralVerdict {
  enum class Kind { Ok, Cycle, LambdaLoop };

  Kind kind = Kind::Ok;
  std::vector<std::string> cycle_witness;  // closed path in ℓ(G) on the complement
  std::string lambda_loop_witness;         // complement vertex whose loop is exactly λ

  bool ok() const noexcept { return kind == Kind::Ok; }

  std::string describe() const {
    switch (kind) {
      case Kind::Ok: return "structural";
      case Kind::Cycle: {
        std::string out = "cycle in complement:";
        for (const auto& v : cycle_witness) out += " " + v + " ->";
        out += " " + cycle_witness.front();
        return out;
      }
      case Kind::LambdaLoop: return "loop weight equals l at " + lambda_loop_witness;
    }
    return {};
  }
};

namespace detail {

// A simple cycle through `start` staying inside `component`.
inline std::vector<std::size_t> cycle_through(const WeightedDigraph& g, const std::vector<std::size_t>& component,
                                              std::size_t start) {
  std::vector<bool> inside(g.size(), false);
  for (std::size_t v : component) inside[v] = true;
  // Breadth-first search from start back to start.
  std::vector<std::size_t> parent(g.size(), g.size());
  std::vector<std::size_t> queue{start};
  std::vector<bool> seen(g.size(), false);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t v = queue[head];
    for (std::size_t w : g.successors(v)) {
      if (!inside[w] || w == v) continue;
      if (w == start) {
        std::vector<std::size_t> path{v};
        while (path.back() != start) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace detail

/// Checks whether `subset` is a structural set of g: the complement induces
/// no closed path in ℓ(G), and no complement vertex has loop weight λ.
inline StructuralVerdict is_structural(const WeightedDigraph& g, std::span<const std::string> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySet, "structural set must be nonempty");
  std::vector<std::size_t> members = resolve_labels(g, subset);
  std::vector<bool> complement(g.size(), true);
  for (std::size_t i : members) complement[i] = false;

  StructuralVerdict verdict;
  for (const auto& component : strongly_connected_components(g, complement)) {
    if (component.size() < 2) continue;
    verdict.kind = StructuralVerdict::Kind::Cycle;
    for (std::size_t v : detail::cycle_through(g, component, component.front())) {
      verdict.cycle_witness.push_back(g.label(v));
    }
    return verdict;
  }
  const RationalFunction lambda = RationalFunction::lambda();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (complement[i] && g.loop_weight(i) == lambda) {
      verdict.kind = StructuralVerdict::Kind::LambdaLoop;
      verdict.lambda_loop_witness = g.label(i);
      return verdict;
    }
  }
  return verdict;
}

class NotStructuralError : public Error {
 public:
  explicit NotStructuralError(StructuralVerdict verdict)
      : Error(ErrorKind::NotStructural, "not a structural set: " + verdict.describe()), verdict_(std::move(verdict)) {}

  const StructuralVerdict& verdict() const noexcept { return verdict_; }

 private:
  StructuralVerdict verdict_;
};

/// A validated structural set of a particular graph, held as vertex indices
/// in declaration order.
class StructuralSet {
 public:
  /// Throws NotStructuralError when the check fails.
  static StructuralSet validate(const WeightedDigraph& g, std::span<const std::string> subset) {
    StructuralVerdict verdict = is_structural(g, subset);
    if (!verdict.ok()) throw NotStructuralError(std::move(verdict));
    StructuralSet s;
    s.in_set_.assign(g.size(), false);
    for (std::size_t i : resolve_labels(g, subset)) s.in_set_[i] = true;
    for (std::size_t i = 0; i < g.size(); ++i) (s.in_set_[i] ? s.members_ : s.complement_).push_back(i);
    return s;
  }

  const std::vector<std::size_t>& members() const noexcept { return members_; }
  const std::vector<std::size_t>& complement() const noexcept { return complement_; }
  bool contains(std::size_t v) const { return in_set_.at(v); }
  std::size_t graph_size() const noexcept { return in_set_.size(); }

  std::vector<std::string> member_labels(const WeightedDigraph& g) const {
    std::vector<std::string> out;
    for (std::size_t i : members_) out.push_back(g.label(i));
    return out;
  }

 private:
  StructuralSet() = default;

  std::vector<std::size_t> members_;
  std::vector<std::size_t> complement_;
  std::vector<bool> in_set_;
};

/// A path v_a, u_1, ..., u_k, v_b whose endpoints lie in S and whose interior
/// vertices are distinct and outside S. v_a = v_b is allowed (a cycle based
/// at v_a), including the bare loop v_a, v_a.
struct SPath {
  std::vector<std::size_t> vertices;

  std::size_t source() const { return vertices.front(); }
  std::size_t target() const { return vertices.back(); }
  std::size_t interior_count() const { return vertices.size() - 2; }
  std::span<const std::size_t> interior() const {
    return std::span<const std::size_t>(vertices).subspan(1, vertices.size() - 2);
  }

  friend bool operator==(const SPath&, const SPath&) = default;
  friend auto operator<=>(const SPath&, const SPath&) = default;
};

/// B_S(G): every S-path, grouped by (source, target).
class PathBundle {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  void add(SPath path) { by_pair_[{path.source(), path.target()}].push_back(std::move(path)); }

  const std::map<Key, std::vector<SPath>>& by_pair() const noexcept { return by_pair_; }

  std::span<const SPath> paths(std::size_t from, std::size_t to) const {
    auto it = by_pair_.find({from, to});
    if (it == by_pair_.end()) return {};
    return it->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [key, paths] : by_pair_) n += paths.size();
    return n;
  }

  bool empty() const { return by_pair_.empty(); }

  std::vector<SPath> all() const {
    std::vector<SPath> out;
    for (const auto& [key, paths] : by_pair_) out.insert(out.end(), paths.begin(), paths.end());
    return out;
  }

 private:
  std::map<Key, std::vector<SPath>> by_pair_;
};

/// Enumerates B_ij(G;S) for all pairs of S. Finite because the complement
/// is acyclic once loops are ignored.
inline PathBundle enumerate_bundle(const WeightedDigraph& g, const StructuralSet& s) {
  PathBundle bundle;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(g.size(), false);

  auto extend = [&](auto&& self, std::size_t v) -> void {
    for (std::size_t w : g.successors(v)) {
      if (s.contains(w)) {
        SPath p{path};
        p.vertices.push_back(w);
        bundle.add(std::move(p));
        continue;
      }
      if (w == v || on_path[w]) continue;
      path.push_back(w);
      on_path[w] = true;
      self(self, w);
      on_path[w] = false;
      path.pop_back();
    }
  };

  for (std::size_t start : s.members()) {
    path.assign(1, start);
    extend(extend, start);
  }
  return bundle;
}

}  // namespace isored
