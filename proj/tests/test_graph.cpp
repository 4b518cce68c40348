#include <gtest/gtest.h>

#include <sstream>

#include "dyntopk/graph.hpp"
#include "support/graphs.hpp"

using namespace dyntopk;
using dyntopk::testing::erdos_renyi;
using dyntopk::testing::from_edges;
using dyntopk::testing::path;
using dyntopk::testing::star;

namespace {

LoadResult load(const std::string& text, bool directed, LoadOptions opts = {}) {
  std::istringstream in(text);
  return load_edge_list(in, directed, opts);
}

}  // namespace

TEST(LoadEdgeList, TwoEdgePath) {
  const auto r = load("0 1\n1 2\n", false);
  EXPECT_EQ(r.graph.num_nodes(), 3u);
  EXPECT_EQ(r.graph.num_edges(), 2u);
  EXPECT_EQ(r.duplicates_dropped, 0u);
}

TEST(LoadEdgeList, DuplicatesDroppedWhenUndirected) {
  const auto r = load("# c\n0 1\n0 1\n1 0\n", false);
  EXPECT_EQ(r.graph.num_nodes(), 2u);
  EXPECT_EQ(r.graph.num_edges(), 1u);
  EXPECT_EQ(r.duplicates_dropped, 2u);
}

TEST(LoadEdgeList, ReciprocalArcsDistinctWhenDirected) {
  const auto r = load("0 1\n1 0\n", true);
  EXPECT_EQ(r.graph.num_nodes(), 2u);
  EXPECT_EQ(r.graph.num_edges(), 2u);
  EXPECT_EQ(r.duplicates_dropped, 0u);
}

TEST(LoadEdgeList, CommentsBlankLinesAndSelfLoops) {
  const auto r = load("% konect header\n\n  3\t4  \n2 2\n# trailing\n", false);
  EXPECT_EQ(r.graph.num_nodes(), 5u);
  EXPECT_EQ(r.graph.num_edges(), 1u);
  EXPECT_EQ(r.self_loops_dropped, 1u);
  EXPECT_TRUE(r.graph.has_edge(4, 3));
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  try {
    load("0 1\n1 x\n", false);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load("0 1 2\n", false), ParseError);
  EXPECT_THROW(load("7\n", false), ParseError);
}

TEST(LoadEdgeList, NegativeIdRejected) {
  try {
    load("# x\n0 1\n-3 1\n", false);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadEdgeList, RemapCompactsSparseIds) {
  const auto r = load("100 7\n7 5000\n", false, LoadOptions{true});
  EXPECT_EQ(r.graph.num_nodes(), 3u);
  ASSERT_EQ(r.original_ids.size(), 3u);
  EXPECT_EQ(r.original_ids[0], 100);
  EXPECT_EQ(r.original_ids[1], 7);
  EXPECT_EQ(r.original_ids[2], 5000);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
  EXPECT_TRUE(r.graph.has_edge(1, 2));
}

TEST(Bfs, PathDistances) {
  const auto b = bfs(path(4), 0);
  EXPECT_EQ(b.dist, (std::vector<distance>{0, 1, 2, 3}));
  EXPECT_EQ(b.levels, (std::vector<count>{1, 1, 1, 1}));
  EXPECT_EQ(b.reached, 3u);
}

TEST(Bfs, StarFromLeaf) {
  const auto b = bfs(star(3), 1);
  EXPECT_EQ(b.dist, (std::vector<distance>{1, 0, 2, 2}));
}

TEST(Bfs, ReverseUsesInAdjacency) {
  const Graph g = from_edges(3, {{0, 1}, {1, 2}}, true);
  EXPECT_EQ(bfs(g, 2, true).dist, (std::vector<distance>{2, 1, 0}));
  EXPECT_EQ(bfs(g, 2, false).dist, (std::vector<distance>{kUnreached, kUnreached, 0}));
}

TEST(Bfs, UnreachedUsesSentinel) {
  const Graph g = from_edges(4, {{0, 1}});
  const auto b = bfs(g, 0);
  EXPECT_EQ(b.dist[2], kUnreached);
  EXPECT_EQ(b.reached, 1u);
}

TEST(GraphMutation, InsertAndDelete) {
  Graph g = path(3);
  g.insert_edge(0, 2);
  EXPECT_EQ(g.num_edges(), 3u);
  g.delete_edge(0, 2);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_THROW(g.delete_edge(0, 2), PreconditionError);
  EXPECT_THROW(g.insert_edge(0, 1), PreconditionError);
  EXPECT_THROW(g.insert_edge(1, 1), PreconditionError);
  EXPECT_THROW(g.insert_edge(0, 9), PreconditionError);
}

TEST(GraphMutation, VersionCountsMutations) {
  Graph g(3, false);
  const auto v0 = g.version();
  g.insert_edge(0, 1);
  g.delete_edge(1, 0);
  EXPECT_EQ(g.version(), v0 + 2);
}

// Properties over random graphs.

TEST(GraphProperties, BfsDistancesDifferByAtMostOneAcrossEdges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = erdos_renyi(60, 90, false, seed);
    const auto b = bfs(g, 0);
    count level_sum = 0;
    for (std::size_t i = 1; i < b.levels.size(); ++i) {
      EXPECT_GT(b.levels[i], 0u);
      level_sum += b.levels[i];
    }
    EXPECT_EQ(level_sum, b.reached);
    for (auto [u, v] : g.edges()) {
      if (b.dist[u] == kUnreached) {
        EXPECT_EQ(b.dist[v], kUnreached);
        continue;
      }
      const auto du = static_cast<long>(b.dist[u]);
      const auto dv = static_cast<long>(b.dist[v]);
      EXPECT_LE(std::abs(du - dv), 1);
    }
  }
}

TEST(GraphProperties, DegreeSumMatchesEdgeCount) {
  for (bool directed : {false, true}) {
    const Graph g = erdos_renyi(50, 200, directed, 7);
    count out = 0, in = 0;
    for (node v = 0; v < g.num_nodes(); ++v) {
      out += g.out_degree(v);
      in += g.in_degree(v);
    }
    EXPECT_EQ(out, directed ? g.num_edges() : 2 * g.num_edges());
    EXPECT_EQ(in, out);
  }
}

TEST(GraphProperties, InsertThenDeleteRestoresAdjacency) {
  std::mt19937_64 rng(3);
  for (bool directed : {false, true}) {
    Graph g = erdos_renyi(40, 100, directed, 11);
    for (int trial = 0; trial < 200; ++trial) {
      const node u = static_cast<node>(rng() % 40), v = static_cast<node>(rng() % 40);
      if (u == v || g.has_edge(u, v)) continue;
      const Graph before = g;
      g.insert_edge(u, v);
      g.delete_edge(u, v);
      for (node x = 0; x < 40; ++x) {
        auto a = std::vector<node>(g.out_neighbors(x).begin(), g.out_neighbors(x).end());
        auto b = std::vector<node>(before.out_neighbors(x).begin(), before.out_neighbors(x).end());
        EXPECT_EQ(a, b);
        a.assign(g.in_neighbors(x).begin(), g.in_neighbors(x).end());
        b.assign(before.in_neighbors(x).begin(), before.in_neighbors(x).end());
        EXPECT_EQ(a, b);
      }
      EXPECT_EQ(g.num_edges(), before.num_edges());
    }
  }
}
