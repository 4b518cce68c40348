#include <gtest/gtest.h>

#include <random>

#include "dyntopk/component_tracker.hpp"
#include "dyntopk/verify.hpp"
#include "support/graphs.hpp"

using namespace dyntopk;
using dyntopk::testing::erdos_renyi;
using dyntopk::testing::from_edges;
using dyntopk::testing::path;

namespace {

void insert(Graph& g, ComponentTracker& t, node u, node v) {
  g.insert_edge(u, v);
  t.on_insert(g, u, v);
}

void remove(Graph& g, ComponentTracker& t, node u, node v) {
  g.delete_edge(u, v);
  t.on_delete(g, u, v);
}

}  // namespace

TEST(ComponentTracker, InitTwoDisjointEdges) {
  const Graph g = from_edges(4, {{0, 1}, {2, 3}});
  const ComponentTracker t(g);
  EXPECT_EQ(t.num_components(), 2u);
  EXPECT_EQ(t.component_size(0), 2u);
  EXPECT_EQ(t.component_size(3), 2u);
  EXPECT_NE(t.label(0), t.label(2));
}

TEST(ComponentTracker, InitPathAndEmpty) {
  EXPECT_EQ(ComponentTracker(path(4)).component_size(2), 4u);
  const ComponentTracker empty(Graph(5, false));
  EXPECT_EQ(empty.num_components(), 5u);
  for (node v = 0; v < 5; ++v) EXPECT_EQ(empty.component_size(v), 1u);
}

TEST(ComponentTracker, InsertMerges) {
  Graph g = from_edges(4, {{0, 1}, {2, 3}});
  ComponentTracker t(g);
  insert(g, t, 1, 2);
  EXPECT_EQ(t.num_components(), 1u);
  EXPECT_EQ(t.component_size(0), 4u);
  EXPECT_TRUE(t.is_forest_edge(1, 2));
}

TEST(ComponentTracker, InsertChordKeepsSizes) {
  Graph g = path(3);
  ComponentTracker t(g);
  insert(g, t, 0, 2);
  EXPECT_EQ(t.component_size(1), 3u);
  EXPECT_FALSE(t.is_forest_edge(0, 2));
  EXPECT_EQ(t.forest_size(), 2u);
}

TEST(ComponentTracker, InsertBetweenSingletons) {
  Graph g(3, false);
  ComponentTracker t(g);
  insert(g, t, 0, 1);
  EXPECT_EQ(t.component_size(0), 2u);
  EXPECT_EQ(t.component_size(2), 1u);
}

TEST(ComponentTracker, DeleteBridgeSplits) {
  Graph g = path(3);
  ComponentTracker t(g);
  remove(g, t, 1, 2);
  EXPECT_EQ(t.component_size(0), 2u);
  EXPECT_EQ(t.component_size(1), 2u);
  EXPECT_EQ(t.component_size(2), 1u);
  EXPECT_NE(t.label(0), t.label(2));
}

TEST(ComponentTracker, DeleteTriangleEdgeKeepsComponent) {
  for (auto [u, v] : std::vector<std::pair<node, node>>{{0, 1}, {1, 2}, {0, 2}}) {
    Graph g = from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    ComponentTracker t(g);
    remove(g, t, u, v);
    EXPECT_EQ(t.num_components(), 1u);
    EXPECT_EQ(t.component_size(0), 3u);
    EXPECT_EQ(t.forest_size(), 2u);
  }
}

TEST(ComponentTracker, DirectedWeakComponents) {
  Graph g = from_edges(3, {{0, 1}, {2, 1}}, true);
  ComponentTracker t(g);
  EXPECT_EQ(t.component_size(0), 3u);
  remove(g, t, 0, 1);
  EXPECT_EQ(t.component_size(0), 1u);
  EXPECT_EQ(t.component_size(1), 2u);
  EXPECT_EQ(t.label(1), t.label(2));
  EXPECT_FALSE(check_components(t, g).has_value());
}

TEST(ComponentTracker, ReverseArcKeepsSkeletonEdge) {
  Graph g = from_edges(2, {{0, 1}, {1, 0}}, true);
  ComponentTracker t(g);
  remove(g, t, 0, 1);
  EXPECT_EQ(t.component_size(0), 2u);
  remove(g, t, 1, 0);
  EXPECT_EQ(t.component_size(0), 1u);
}

TEST(ComponentTracker, ReachableUpperBound) {
  EXPECT_EQ(ComponentTracker(path(4)).reachable_ubound(1), 3u);
  const Graph chain = from_edges(3, {{0, 1}, {1, 2}}, true);
  EXPECT_EQ(ComponentTracker(chain).reachable_ubound(0), 2u);
  // 0 -> 1 <- 2: node 1 reaches nothing, the weak component still has size 3.
  const Graph sink = from_edges(3, {{0, 1}, {2, 1}}, true);
  EXPECT_EQ(ComponentTracker(sink).reachable_ubound(1), 2u);
  EXPECT_EQ(bfs(sink, 1).reached, 0u);
}

// Random update sequences checked against a fresh labeling after every step.
TEST(ComponentTracker, MatchesFreshLabelingUnderRandomUpdates) {
  for (bool directed : {false, true}) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      Graph g = erdos_renyi(40, directed ? 45 : 35, directed, seed);
      ComponentTracker t(g);
      std::mt19937_64 rng(seed + 100);
      for (int step = 0; step < 150; ++step) {
        auto edges = g.edges();
        if ((rng() & 1) && !edges.empty()) {
          const auto [u, v] = edges[rng() % edges.size()];
          remove(g, t, u, v);
        } else {
          const node u = static_cast<node>(rng() % 40), v = static_cast<node>(rng() % 40);
          if (u == v || g.has_edge(u, v)) continue;
          insert(g, t, u, v);
        }
        const auto err = check_components(t, g);
        ASSERT_FALSE(err.has_value()) << *err << " directed=" << directed << " seed=" << seed << " step=" << step;
        ASSERT_EQ(t.forest_size(), g.num_nodes() - t.num_components());
        for (node y = 0; y < g.num_nodes(); ++y) ASSERT_GE(t.reachable_ubound(y), bfs(g, y).reached);
      }
    }
  }
}
