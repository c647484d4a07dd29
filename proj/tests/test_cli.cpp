#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "isored/cli.hpp"
#include "support/cli_cases.hpp"
#include "support/random_graphs.hpp"

using namespace isored;
using namespace isored::fixtures;

TEST(Cli, GoldenOutputs) {
  for (const auto& c : golden_cases()) {
    Outcome r = run(c.args);
    EXPECT_EQ(r.code, c.code) << c.name << ": " << r.err;
    EXPECT_EQ(r.out, slurp(golden_path(c.name))) << c.name;
    EXPECT_TRUE(r.err.empty()) << c.name;
  }
}

TEST(Cli, ErrorCodes) {
  for (const auto& c : error_cases()) {
    Outcome r = run(c.args);
    EXPECT_EQ(r.code, c.code) << r.err;
    std::string prefix = "error kind=" + c.kind + " code=" + std::to_string(c.code) + " message=\"";
    EXPECT_EQ(r.err.rfind(prefix, 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
}

TEST(Cli, ExitCodesAreDistinct) {
  std::set<int> seen;
  for (int k = 0; k <= static_cast<int>(ErrorKind::Io); ++k) {
    EXPECT_TRUE(seen.insert(cli::exit_code(static_cast<ErrorKind>(k))).second);
  }
  EXPECT_EQ(seen.count(0), 0u);
  EXPECT_EQ(seen.count(cli::kExitNotEquivalent), 0u);
}

TEST(Cli, ParseErrorsCarryPositions) {
  Outcome truncated = run({"spectrum", input("truncated.json")});
  EXPECT_NE(truncated.err.find("line 4, column 1"), std::string::npos) << truncated.err;
  Outcome unbalanced = run({"spectrum", input("unbalanced.json")});
  EXPECT_NE(unbalanced.err.find("offset 2"), std::string::npos) << unbalanced.err;
  EXPECT_NE(unbalanced.err.find("\"(l-3\""), std::string::npos) << unbalanced.err;
}

TEST(Cli, ReportFileMatchesStdout) {
  auto path = std::filesystem::temp_directory_path() / "isored_report_test.json";
  Outcome r = run({"reduce", data("two_cycle.json"), "--keep", "v1", "--report", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(path.string()), r.out);
  std::filesystem::remove(path);
}

TEST(Cli, ToleranceFromEnvironment) {
  ::setenv(cli::kToleranceEnv, "1e-6", 1);
  EXPECT_EQ(run({"spectrum", data("three_cycle.json")}).code, 0);
  ::setenv(cli::kToleranceEnv, "abc", 1);
  Outcome bad = run({"spectrum", data("three_cycle.json")});
  EXPECT_EQ(bad.code, 1);
  ::unsetenv(cli::kToleranceEnv);
}

TEST(Cli, DotIsDeterministic) {
  std::string first = run({"dot", data("four_vertex.json")}).out;
  for (int i = 0; i < 5; ++i) EXPECT_EQ(run({"dot", data("four_vertex.json")}).out, first);
  EXPECT_EQ(first.rfind("digraph G {\n", 0), 0u);
}

TEST(Document, ParseExamples) {
  auto g = parse_graph(R"({"version": 1, "vertices": ["v1", "v2"], "edges": [{"from": "v1", "to": "v2", "weight": "1"}]})");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.weight(0, 1)->is_one());
  auto loop = parse_graph(R"({"version": 1, "vertices": ["v1"], "edges": [{"from": "v1", "to": "v1", "weight": "1/l"}]})");
  EXPECT_EQ(loop.loop_weight(0), RationalFunction(1L) / RationalFunction::lambda());
  auto ints = parse_graph(R"({"version": 1, "vertices": ["a"], "edges": [{"from": "a", "to": "a", "weight": -2}]})");
  EXPECT_EQ(ints.loop_weight(0), RationalFunction(-2L));
  try {
    parse_graph(R"({"version": 2, "vertices": []})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Document, RoundTrip) {
  std::mt19937_64 rng(71);
  fixtures::RandomGraphParams p;
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng, p);
    if (i % 2 == 1) g = reduce_subset(g, fixtures::random_subset(rng, g)).reduced;
    std::string text = emit_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(emit_graph(parse_graph(text)), text);
  }
  for (const char* name : {"two_cycle.json", "three_cycle.json", "expansion_b.json", "four_vertex.json"}) {
    auto g = parse_graph(slurp(data(name)));
    EXPECT_EQ(parse_graph(emit_graph(g)), g) << name;
  }
}

TEST(Document, DotFormat) {
  auto g = parse_graph(slurp(data("loop.json")));
  EXPECT_EQ(emit_dot(g), "digraph G {\n  \"v1\";\n  \"v1\" -> \"v1\" [label=\"1/l\"];\n}\n");
  auto q = WeightedDigraph::build({"a\"b"}, {});
  EXPECT_EQ(emit_dot(q), "digraph G {\n  \"a\\\"b\";\n}\n");
}
