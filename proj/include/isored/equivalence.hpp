#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "isored/digraph.hpp"
#include "isored/error.hpp"
#include "isored/reduce.hpp"

namespace isored {

/// A deterministic map from a graph to a nonempty vertex subset. Selectors
/// must depend only on graph structure and weights, never on labels or
/// declaration order, so that the induced relation is well defined.
struct SelectionRule {
  std::string name;
  std::function<std::vector<std::size_t>(const WeightedDigraph&)> selector;
};

namespace detail {

template <typename Key>
SelectionRule extremal_rule(std::string name, Key key, bool maximal) {
  return {std::move(name), [key, maximal](const WeightedDigraph& g) {
            auto stats = degree_stats(g);
            std::size_t best = key(stats[0]);
            for (const auto& d : stats) best = maximal ? std::max(best, key(d)) : std::min(best, key(d));
            std::vector<std::size_t> out;
            for (std::size_t i = 0; i < stats.size(); ++i) {
              if (key(stats[i]) == best) out.push_back(i);
            }
            return out;
          }};
}

}  // namespace detail

/// Named rules available to the CLI; users may add their own.
class RuleRegistry {
 public:
  RuleRegistry() {
    auto out = [](const DegreeRecord& d) { return d.out_degree; };
    auto in = [](const DegreeRecord& d) { return d.in_degree; };
    add(detail::extremal_rule("min-out-degree", out, false));
    add(detail::extremal_rule("max-out-degree", out, true));
    add(detail::extremal_rule("min-in-degree", in, false));
    add(detail::extremal_rule("max-in-degree", in, true));
    add({"has-loop", [](const WeightedDigraph& g) {
           std::vector<std::size_t> out;
           for (std::size_t i = 0; i < g.size(); ++i) {
             if (g.has_loop(i)) out.push_back(i);
           }
           return out;
         }});
    add({"all-vertices", [](const WeightedDigraph& g) {
           std::vector<std::size_t> out(g.size());
           for (std::size_t i = 0; i < g.size(); ++i) out[i] = i;
           return out;
         }});
  }

  void add(SelectionRule rule) {
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const auto& r) { return r.name == rule.name; });
    if (it != rules_.end()) {
      *it = std::move(rule);
    } else {
      rules_.push_back(std::move(rule));
    }
  }

  const SelectionRule& get(std::string_view name) const {
    for (const auto& r : rules_) {
      if (r.name == name) return r;
    }
    throw Error(ErrorKind::UnknownRule, "unknown selection rule '" + std::string(name) + "'");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& r : rules_) out.push_back(r.name);
    return out;
  }

 private:
  std::vector<SelectionRule> rules_;
};

inline const RuleRegistry& builtin_rules() {
  static const RuleRegistry registry;
  return registry;
}

/// τ(G) as labels in declaration order. An empty selection falls back to
/// every vertex, so the rule stays total.
inline std::vector<std::string> apply_rule(const SelectionRule& rule, const WeightedDigraph& g) {
  if (g.size() == 0) throw Error(ErrorKind::EmptyGraph, "selection rules need a nonempty graph");
  std::vector<std::size_t> picked = rule.selector(g);
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  std::vector<std::string> out;
  if (picked.empty()) return g.labels();
  for (std::size_t i : picked) out.push_back(g.label(i));
  return out;
}

inline constexpr std::size_t kDefaultIsomorphismBudget = 12;

/// Backtracking search for a bijection f (g index -> h index) carrying every
/// edge of g onto an edge of h with an identical canonical weight, and
/// non-edges onto non-edges.
inline std::optional<std::vector<std::size_t>> weighted_isomorphic(const WeightedDigraph& g, const WeightedDigraph& h,
                                                                   std::size_t max_vertices = kDefaultIsomorphismBudget) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  const std::size_t n = g.size();
  if (n > max_vertices) {
    throw Error(ErrorKind::SearchBudgetExceeded,
                "isomorphism search limited to " + std::to_string(max_vertices) + " vertices, got " + std::to_string(n));
  }

  // Vertex invariant: degrees plus the sorted weights on incident edges.
  auto profile = [](const WeightedDigraph& x, std::size_t v) {
    std::vector<std::string> out_w, in_w;
    for (std::size_t w : x.successors(v)) {
      if (w != v) out_w.push_back(x.weight(v, w)->to_expression());
    }
    for (std::size_t w : x.predecessors(v)) {
      if (w != v) in_w.push_back(x.weight(w, v)->to_expression());
    }
    std::sort(out_w.begin(), out_w.end());
    std::sort(in_w.begin(), in_w.end());
    std::string loop = x.has_loop(v) ? x.loop_weight(v).to_expression() : "-";
    return std::make_tuple(loop, out_w, in_w);
  };
  std::vector<decltype(profile(g, 0))> pg, ph;
  for (std::size_t v = 0; v < n; ++v) {
    pg.push_back(profile(g, v));
    ph.push_back(profile(h, v));
  }
  {
    auto sg = pg, sh = ph;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t v, std::size_t image) {
    for (std::size_t u = 0; u < n; ++u) {
      if (map[u] == n) continue;
      const RationalFunction* a = g.weight(u, v);
      const RationalFunction* b = h.weight(map[u], image);
      if ((a == nullptr) != (b == nullptr) || (a && *a != *b)) return false;
      a = g.weight(v, u);
      b = h.weight(image, map[u]);
      if ((a == nullptr) != (b == nullptr) || (a && *a != *b)) return false;
    }
    return true;
  };
  auto assign = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t image = 0; image < n; ++image) {
      if (used[image] || pg[v] != ph[image] || !consistent(v, image)) continue;
      map[v] = image;
      used[image] = true;
      if (self(self, v + 1)) return true;
      map[v] = n;
      used[image] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return map;
}

struct EquivalenceVerdict {
  bool equivalent = false;
  /// Label pairs (left, right) when equivalent.
  std::optional<std::vector<std::pair<std::string, std::string>>> witness;
  WeightedDigraph left_reduced;
  WeightedDigraph right_reduced;
};

/// Reduces g and h over the vertices each selects under `rule` and compares
/// the results up to weighted isomorphism.
inline EquivalenceVerdict spectrally_equivalent(const WeightedDigraph& g, const WeightedDigraph& h,
                                                const SelectionRule& rule,
                                                std::size_t max_vertices = kDefaultIsomorphismBudget) {
  auto reduce_side = [&](const WeightedDigraph& x, const char* side) {
    try {
      return reduce_subset(x, apply_rule(rule, x)).reduced;
    } catch (const LambdaLoopError& e) {
      throw LambdaLoopError(e.vertex(), e.graph(), std::string(side) + " graph");
    }
  };
  EquivalenceVerdict verdict;
  verdict.left_reduced = reduce_side(g, "left");
  verdict.right_reduced = reduce_side(h, "right");
  if (auto map = weighted_isomorphic(verdict.left_reduced, verdict.right_reduced, max_vertices)) {
    verdict.equivalent = true;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t v = 0; v < map->size(); ++v) {
      pairs.emplace_back(verdict.left_reduced.label(v), verdict.right_reduced.label((*map)[v]));
    }
    verdict.witness = std::move(pairs);
  }
  return verdict;
}

}  // namespace isored
