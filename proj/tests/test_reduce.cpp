#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "isored/reduce.hpp"
#include "support/random_graphs.hpp"

using namespace isored;

namespace {

using Labels = std::vector<std::string>;

RationalFunction w(const char* expr) { return parse_weight(expr); }

WeightedDigraph cycle(std::size_t n) {
  auto labels = fixtures::numbered_labels(n);
  WeightedDigraph::EdgeMap edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace(std::make_pair(i, (i + 1) % n), RationalFunction(1L));
  return WeightedDigraph::from_indexed(labels, edges);
}

WeightedDigraph single_loop(const char* weight) { return WeightedDigraph::build({"v1"}, {{"v1", "v1", weight}}); }

Labels complement_of(const WeightedDigraph& g, const Labels& keep) {
  Labels out;
  for (const auto& l : g.labels()) {
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST(PathWeight, Examples) {
  auto direct = WeightedDigraph::build({"v1", "v2"}, {{"v1", "v2", "2*l+1"}});
  EXPECT_EQ(path_weight(direct, SPath{{0, 1}}), w("2*l+1"));

  auto through = WeightedDigraph::build({"v1", "u", "v2"}, {{"v1", "u", "1"}, {"u", "v2", "1"}});
  EXPECT_EQ(path_weight(through, SPath{{0, 1, 2}}), w("1/l"));

  auto looped = WeightedDigraph::build({"v1", "u", "v2"}, {{"v1", "u", "1"}, {"u", "v2", "1"}, {"u", "u", "2"}});
  EXPECT_EQ(path_weight(looped, SPath{{0, 1, 2}}), w("1/(l-2)"));
}

TEST(ReduceStructural, Examples) {
  auto two = reduce_structural(cycle(2), Labels{"v1"});
  EXPECT_EQ(two.reduced, single_loop("1/l"));
  ASSERT_EQ(two.removed.size(), 1u);
  EXPECT_EQ(two.removed[0].vertex, "v2");
  EXPECT_TRUE(two.removed[0].loop_weight.is_zero());

  EXPECT_EQ(reduce_structural(cycle(3), Labels{"v1"}).reduced, single_loop("1/l^2"));
}

TEST(ReduceStructural, FullSetIsIdentity) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    auto g = fixtures::random_graph(rng);
    EXPECT_EQ(reduce_structural(g, g.labels()).reduced, g);
  }
}

TEST(ReduceStructural, RejectsNonStructuralSets) {
  auto g = WeightedDigraph::build({"a", "b", "c"}, {{"b", "c", "1"}, {"c", "b", "1"}});
  try {
    reduce_structural(g, Labels{"a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStructural);
  }
}

TEST(ReduceStructural, MergesParallelPaths) {
  // The textbook edge weight 1/l^2 + 2/l^3 + 1/l^4 arises from three paths.
  auto g = WeightedDigraph::build({"s", "a", "b", "c", "t"}, {{"s", "a", "1"},
                                                              {"a", "t", "1"},
                                                              {"s", "b", "1"},
                                                              {"b", "c", "1"},
                                                              {"c", "t", "1"},
                                                              {"a", "c", "1"},
                                                              {"b", "a", "1"}});
  auto r = reduce_structural(g, Labels{"s", "t"}).reduced;
  // s a t, s b a t, s a c t, s b c t, s b a c t
  EXPECT_EQ(*r.weight(0, 1), w("1/l") + w("3/l^2") + w("1/l^3"));
}

TEST(EliminateVertex, Examples) {
  EXPECT_EQ(eliminate_vertex(cycle(2), "v2"), single_loop("1/l"));

  auto path = WeightedDigraph::build({"v1", "v2", "v3"}, {{"v1", "v2", "1"}, {"v2", "v3", "1"}});
  EXPECT_EQ(eliminate_vertex(path, "v2"), WeightedDigraph::build({"v1", "v3"}, {{"v1", "v3", "1/l"}}));

  auto isolated = WeightedDigraph::build({"a", "u", "b"}, {{"a", "b", "l"}, {"b", "b", "3"}});
  EXPECT_EQ(eliminate_vertex(isolated, "u"), WeightedDigraph::build({"a", "b"}, {{"a", "b", "l"}, {"b", "b", "3"}}));
}

TEST(EliminateVertex, LambdaLoopIsReported) {
  auto g = WeightedDigraph::build({"a", "u"}, {{"a", "u", "1"}, {"u", "a", "1"}, {"u", "u", "l"}});
  try {
    eliminate_vertex(g, "u");
    FAIL();
  } catch (const LambdaLoopError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LambdaLoop);
    EXPECT_EQ(e.vertex(), "u");
    EXPECT_EQ(e.graph(), g);
  }
}

TEST(EliminateVertex, MatchesStructuralReduction) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng);
    if (g.size() < 2) continue;
    std::size_t v = std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng);
    Labels rest;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k != v) rest.push_back(g.label(k));
    }
    EXPECT_EQ(eliminate_vertex(g, v), reduce_structural(g, rest).reduced);
  }
}

TEST(ReduceSubset, Examples) {
  auto g = cycle(3);
  EXPECT_EQ(reduce_subset(g, g.labels()).reduced, g);
  auto a = reduce_subset(g, Labels{"v1"}, Labels{"v2", "v3"});
  auto b = reduce_subset(g, Labels{"v1"}, Labels{"v3", "v2"});
  EXPECT_EQ(a.reduced, single_loop("1/l^2"));
  EXPECT_EQ(b.reduced, single_loop("1/l^2"));
  ASSERT_EQ(a.provenance.size(), 2u);
  EXPECT_EQ(a.provenance[0], (Labels{"v1", "v3"}));
  EXPECT_EQ(a.provenance[1], (Labels{"v1"}));
}

TEST(ReduceSubset, Errors) {
  auto g = cycle(3);
  try {
    reduce_subset(g, Labels{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySet);
  }
  try {
    reduce_subset(g, Labels{"v1"}, Labels{"v2"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
  try {
    reduce_subset(g, Labels{"v1"}, Labels{"v1", "v2"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
  // The loop at u becomes exactly l only after x is gone.
  auto late = WeightedDigraph::build({"a", "x", "u"}, {{"a", "u", "1"}, {"u", "x", "1"}, {"x", "u", "l^2"}});
  try {
    reduce_subset(late, Labels{"a"}, Labels{"x", "u"});
    FAIL();
  } catch (const LambdaLoopError& e) {
    EXPECT_EQ(e.vertex(), "u");
    EXPECT_EQ(e.graph().labels(), (Labels{"a", "u"}));
  }
}

TEST(ReduceSubset, OrderDoesNotMatter) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng);
    auto keep = fixtures::random_subset(rng, g);
    auto removed = complement_of(g, keep);
    auto first = removed, second = removed;
    std::shuffle(first.begin(), first.end(), rng);
    std::shuffle(second.begin(), second.end(), rng);
    EXPECT_EQ(reduce_subset(g, keep, first).reduced, reduce_subset(g, keep, second).reduced);
  }
}

TEST(ReduceSubset, AgreesWithStructuralReduction) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng);
    auto s = fixtures::random_structural_set(rng, g);
    EXPECT_EQ(reduce_subset(g, s).reduced, reduce_structural(g, s).reduced);
  }
}

TEST(ReduceSubset, NestedReductionsCollapse) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 50; ++i) {
    auto g = fixtures::random_graph(rng);
    auto s1 = fixtures::random_subset(rng, g);
    auto sub = induced_subgraph(g, resolve_labels(g, s1));
    auto s2 = fixtures::random_subset(rng, sub);
    auto staged = reduce_subset(reduce_subset(g, s1).reduced, s2).reduced;
    EXPECT_EQ(staged, reduce_subset(g, s2).reduced);
  }
}

TEST(SchurOracle, Examples) {
  auto m = schur_oracle(cycle(2), Labels{"v1"});
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), w("1/l"));

  std::mt19937_64 rng(36);
  for (int i = 0; i < 20; ++i) {
    auto g = fixtures::random_graph(rng);
    EXPECT_EQ(schur_oracle(g, g.labels()), adjacency(g));
  }
}

TEST(SchurOracle, MatchesPathSums) {
  std::mt19937_64 rng(37);
  fixtures::RandomGraphParams p;
  p.min_vertices = 5;
  p.max_vertices = 5;
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng, p);
    auto s = fixtures::random_structural_set(rng, g);
    EXPECT_EQ(adjacency(reduce_structural(g, s).reduced), schur_oracle(g, s));
  }
}
