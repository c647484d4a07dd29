#include <gtest/gtest.h>

#include <random>

#include "isored/digraph.hpp"
#include "support/random_graphs.hpp"

using namespace isored;

namespace {

RationalFunction w(const char* expr) { return parse_weight(expr); }

}  // namespace

TEST(Build, SingleLoop) {
  auto g = WeightedDigraph::build({"v1"}, {{"v1", "v1", "1"}});
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
  ASSERT_TRUE(g.has_loop(0));
  EXPECT_TRUE(g.loop_weight(0).is_one());
}

TEST(Build, ParallelEdgesAreSummed) {
  auto g = WeightedDigraph::build({"v1", "v2"}, {{"v1", "v2", "1"}, {"v1", "v2", "2"}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(*g.weight(0, 1), RationalFunction(3L));
}

TEST(Build, CancellingEdgesVanish) {
  auto g = WeightedDigraph::build({"v1", "v2"}, {{"v1", "v2", "l"}, {"v1", "v2", "-l"}});
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.weight(0, 1), nullptr);
  EXPECT_TRUE(g.weight_or_zero(0, 1).is_zero());
}

TEST(Build, RejectsUnknownAndDuplicateVertices) {
  try {
    WeightedDigraph::build({"v1"}, {{"v1", "v9", "1"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownVertex);
  }
  try {
    WeightedDigraph::build({"v1", "v1"}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateVertex);
  }
}

TEST(Build, EdgeListRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto g = fixtures::random_graph(rng);
    auto edges = g.edge_list();
    EXPECT_EQ(WeightedDigraph::build(g.labels(), edges), g);
  }
}

TEST(Adjacency, Examples) {
  auto two = WeightedDigraph::build({"v1", "v2"}, {{"v1", "v2", "1"}, {"v2", "v1", "1"}});
  auto m = adjacency(two);
  EXPECT_TRUE(m(0, 0).is_zero());
  EXPECT_TRUE(m(0, 1).is_one());
  EXPECT_TRUE(m(1, 0).is_one());
  EXPECT_TRUE(m(1, 1).is_zero());

  auto empty = WeightedDigraph::build({"a", "b", "c"}, {});
  auto z = adjacency(empty);
  ASSERT_EQ(z.rows(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(z(i, j).is_zero());
  }

  auto loop = WeightedDigraph::build({"v1"}, {{"v1", "v1", "1/l"}});
  EXPECT_EQ(adjacency(loop)(0, 0), w("1/l"));
}

TEST(Adjacency, DistinctGraphsGiveDistinctMatrices) {
  std::mt19937_64 rng(12);
  fixtures::RandomGraphParams p;
  p.min_vertices = p.max_vertices = 3;
  for (int i = 0; i < 200; ++i) {
    auto a = fixtures::random_graph(rng, p), b = fixtures::random_graph(rng, p);
    EXPECT_EQ(a == b, adjacency(a) == adjacency(b));
  }
}

TEST(Degrees, Examples) {
  auto two = WeightedDigraph::build({"v1", "v2"}, {{"v1", "v2", "1"}, {"v2", "v1", "1"}});
  for (const auto& d : degree_stats(two)) EXPECT_EQ(d, (DegreeRecord{1, 1, false}));

  auto loop = WeightedDigraph::build({"v1"}, {{"v1", "v1", "1"}});
  EXPECT_EQ(degree_stats(loop)[0], (DegreeRecord{1, 1, true}));

  auto star = WeightedDigraph::build({"v1", "v2", "v3", "v4"},
                                     {{"v1", "v2", "1"}, {"v1", "v3", "1"}, {"v1", "v4", "1"}});
  auto d = degree_stats(star);
  EXPECT_EQ(d[0].out_degree, 3u);
  EXPECT_EQ(d[0].in_degree, 0u);
  EXPECT_EQ(d[2].in_degree, 1u);
}

TEST(Permuted, MovesEdgesWithVertices) {
  auto g = WeightedDigraph::build({"a", "b", "c"}, {{"a", "b", "2"}, {"c", "c", "l"}});
  std::vector<std::size_t> order{2, 0, 1};
  auto p = permuted(g, order);
  EXPECT_EQ(p.labels(), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(*p.weight(1, 2), RationalFunction(2L));
  EXPECT_EQ(*p.weight(0, 0), RationalFunction::lambda());
  EXPECT_EQ(p.edge_count(), 2u);
}

TEST(InducedSubgraph, KeepsInternalEdgesOnly) {
  auto g = WeightedDigraph::build({"a", "b", "c"}, {{"a", "b", "1"}, {"b", "c", "1"}, {"c", "a", "1"}});
  std::vector<std::size_t> keep{0, 1};
  auto h = induced_subgraph(g, keep);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_NE(h.weight(0, 1), nullptr);
}
