#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "dyntopk/errors.hpp"
#include "dyntopk/graph.hpp"
#include "dyntopk/topk_list.hpp"

// Brute-force ground truth. Deliberately shares nothing with the bound
// machinery beyond graph storage and plain BFS.
namespace dyntopk::oracle {

struct OracleResult {
  std::vector<double> closeness;
  /// Nodes by (closeness desc, id asc).
  std::vector<node> ranking;
};

inline double closeness_by_bfs(const Graph& g, node u) {
  const BfsResult b = bfs(g, u);
  double sum = 0.0;
  for (node w = 0; w < g.num_nodes(); ++w)
    if (w != u && b.dist[w] != kUnreached) sum += 1.0 / static_cast<double>(b.dist[w]);
  return sum;
}

inline OracleResult oracle_all(const Graph& g) {
  OracleResult result;
  result.closeness.resize(g.num_nodes());
  for (node u = 0; u < g.num_nodes(); ++u) result.closeness[u] = closeness_by_bfs(g, u);
  result.ranking.resize(g.num_nodes());
  std::iota(result.ranking.begin(), result.ranking.end(), node{0});
  std::sort(result.ranking.begin(), result.ranking.end(), [&](node a, node b) {
    return ranks_before({a, result.closeness[a]}, {b, result.closeness[b]});
  });
  return result;
}

inline TopKList oracle_topk(const OracleResult& all, count k) {
  TopKList list(k);
  for (std::size_t i = 0; i < all.ranking.size() && i < k; ++i) {
    const node v = all.ranking[i];
    list.insert(v, all.closeness[v]);
  }
  return list;
}

inline TopKList oracle_topk(const Graph& g, count k) { return oracle_topk(oracle_all(g), k); }

/// All-pairs distance table; row y holds d(y, .).
inline std::vector<std::vector<distance>> all_pairs(const Graph& g) {
  std::vector<std::vector<distance>> table(g.num_nodes());
  for (node y = 0; y < g.num_nodes(); ++y) table[y] = bfs(g, y).dist;
  return table;
}

/// Nodes y with d'(y,w) != d(y,w) for some w. The graphs must share the node
/// set and differ in exactly one edge.
inline std::vector<node> oracle_affected(const Graph& before, const Graph& after) {
  if (before.num_nodes() != after.num_nodes() || before.directed() != after.directed())
    throw ContractError("oracle_affected: graphs have different node sets");
  const auto e1 = before.edges();
  const auto e2 = after.edges();
  const std::set<std::pair<node, node>> s1(e1.begin(), e1.end());
  const std::set<std::pair<node, node>> s2(e2.begin(), e2.end());
  std::vector<std::pair<node, node>> diff;
  std::set_symmetric_difference(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(diff));
  if (diff.size() != 1) throw ContractError("oracle_affected: graphs must differ in exactly one edge");

  const auto d1 = all_pairs(before);
  const auto d2 = all_pairs(after);
  std::vector<node> affected;
  for (node y = 0; y < before.num_nodes(); ++y)
    if (d1[y] != d2[y]) affected.push_back(y);
  return affected;
}

/// Component label per node on the undirected skeleton, labels assigned in
/// order of the smallest member.
inline std::vector<std::uint32_t> skeleton_components(const Graph& g) {
  std::vector<std::uint32_t> label(g.num_nodes(), std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  std::vector<node> stack;
  for (node s = 0; s < g.num_nodes(); ++s) {
    if (label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    label[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const node x = stack.back();
      stack.pop_back();
      auto visit = [&](node y) {
        if (label[y] == std::numeric_limits<std::uint32_t>::max()) {
          label[y] = next;
          stack.push_back(y);
        }
      };
      for (node y : g.out_neighbors(x)) visit(y);
      for (node y : g.in_neighbors(x)) visit(y);
    }
    ++next;
  }
  return label;
}

}  // namespace dyntopk::oracle
