#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <set>
#include <vector>

#include "isored/digraph.hpp"

namespace isored::fixtures {

/// Eigenvalues of a graph with constant weights, via Eigen's dense solver.
inline std::vector<std::complex<double>> numeric_eigenvalues(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) return {};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, w] : g.edges()) {
    m(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = w.constant_value()->get_d();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// Multiset equality at tolerance by exhaustive nearest matching.
inline bool same_multiset(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (auto x : a) {
    std::size_t best = b.size();
    double best_d = tol;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!used[k] && std::abs(b[k] - x) <= best_d) {
        best_d = std::abs(b[k] - x);
        best = k;
      }
    }
    if (best == b.size()) return false;
    used[best] = true;
  }
  return true;
}

/// S-paths by brute force: every vertex sequence of length <= |V| + 1 is
/// generated and filtered against the definition.
inline std::set<std::vector<std::size_t>> brute_force_bundle(const WeightedDigraph& g, const std::vector<bool>& in_s) {
  std::set<std::vector<std::size_t>> out;
  const std::size_t n = g.size();
  std::vector<std::size_t> seq;
  std::function<void(std::size_t)> gen = [&](std::size_t len) {
    if (seq.size() == len) {
      if (!in_s[seq.front()] || !in_s[seq.back()]) return;
      for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        if (!g.weight(seq[k], seq[k + 1])) return;
      }
      std::set<std::size_t> interior;
      for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
        if (in_s[seq[k]] || !interior.insert(seq[k]).second) return;
      }
      out.insert(seq);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      seq.push_back(v);
      gen(len);
      seq.pop_back();
    }
  };
  for (std::size_t len = 2; len <= n + 1; ++len) gen(len);
  return out;
}

/// Three-colour depth-first search for a non-loop cycle among `active`.
inline bool has_cycle(const WeightedDigraph& g, const std::vector<bool>& active) {
  std::vector<int> colour(g.size(), 0);
  std::function<bool(std::size_t)> visit = [&](std::size_t v) {
    colour[v] = 1;
    for (std::size_t w : g.successors(v)) {
      if (w == v || !active[w]) continue;
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && visit(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (active[v] && colour[v] == 0 && visit(v)) return true;
  }
  return false;
}

}  // namespace isored::fixtures
