#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <vector>

#include "dyntopk/component_tracker.hpp"
#include "dyntopk/graph.hpp"
#include "dyntopk/topk_list.hpp"

namespace dyntopk {

/// Cutoff sentinel: the stored bound did not come from an interrupted BFS.
inline constexpr distance kNoCutoff = std::numeric_limits<distance>::max();

/// Per-node bound state shared by the static and dynamic algorithms.
///
/// Holds, for every node y, an upper bound `cbar[y]` on its harmonic
/// closeness, whether that bound is the exact value, the BFS level at which
/// the bound was produced (`kNoCutoff` if it was not produced by an
/// interrupted BFS) and the reachable-count bound `r[y]` the value was
/// computed with. Nothing here is quadratic in n.
struct NodeBoundState {
  std::vector<double> cbar;
  std::vector<std::uint8_t> exact;
  std::vector<distance> dcut;
  std::vector<count> r;
  /// Graph version these bounds describe.
  std::uint64_t graph_version = 0;

  NodeBoundState() = default;
  explicit NodeBoundState(count n) : cbar(n, 0.0), exact(n, 0), dcut(n, kNoCutoff), r(n, 0) {}

  count size() const noexcept { return cbar.size(); }
  bool is_exact(node y) const { return exact[y] != 0; }

  count memory_bytes() const {
    return cbar.capacity() * sizeof(double) + exact.capacity() + dcut.capacity() * sizeof(distance) +
           r.capacity() * sizeof(count);
  }
};

/// Reusable BFS scratch space. Only the touched entries are reset between runs,
/// so repeated partial searches cost O(visited) instead of O(n).
class BfsWorkspace {
public:
  explicit BfsWorkspace(count n = 0) : dist_(n, kUnreached) {}

  void ensure(count n) {
    if (dist_.size() < n) dist_.resize(n, kUnreached);
  }

  void start(node source) {
    reset();
    dist_[source] = 0;
    queue_.push_back(source);
  }

  void reset() {
    for (node x : queue_) dist_[x] = kUnreached;
    queue_.clear();
  }

  distance dist(node x) const { return dist_[x]; }
  std::vector<distance>& dist() { return dist_; }
  std::vector<node>& queue() { return queue_; }

private:
  std::vector<distance> dist_;
  std::vector<node> queue_;
};

/// Exact harmonic closeness from per-level counts (`levels[0]` is the source).
inline double closeness_from_levels(std::span<const count> levels) {
  double sum = 0.0;
  for (std::size_t i = 1; i < levels.size(); ++i) sum += static_cast<double>(levels[i]) / static_cast<double>(i);
  return sum;
}

/// Sum of 1/d(u,v) over nodes v reachable from u.
inline double harmonic_closeness(const Graph& g, node u) { return closeness_from_levels(bfs(g, u).levels); }

/// Processing order for NBCut: descending out-degree, ties by ascending id.
inline std::vector<node> node_ordering(const Graph& g) {
  std::vector<node> order(g.num_nodes());
  std::iota(order.begin(), order.end(), node{0});
  std::stable_sort(order.begin(), order.end(),
                   [&g](node a, node b) { return g.out_degree(a) > g.out_degree(b); });
  return order;
}

struct CutResult {
  double cbar = 0.0;
  bool exact = false;
  distance dcut = 0;
};

/// Level-by-level BFS from y that keeps the upper bound
///
///   sum_{d(y,z) <= i} 1/d(y,z) + n~/(i+1) + (r - visited - n~)/(i+2),
///
/// where n~ is the summed out-degree of level i and r = state.r[y], and stops
/// at the first level i >= 1 whose bound falls below xk. Returns the bound and
/// the level on interruption, or the exact closeness and the eccentricity.
inline CutResult bfs_cut(const Graph& g, const NodeBoundState& state, node y, double xk, BfsWorkspace& ws) {
  ws.ensure(g.num_nodes());
  ws.start(y);
  auto& dist = ws.dist();
  auto& queue = ws.queue();
  const double r = static_cast<double>(state.r[y]);

  double exact_sum = 0.0;
  double visited = 0.0;
  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  distance level = 0;
  double frontier_degree = 0.0;  // n~ for the next level

  while (true) {
    if (level >= 1) {
      const double i = static_cast<double>(level);
      const double bound = exact_sum + frontier_degree / (i + 1.0) + (r - visited - frontier_degree) / (i + 2.0);
      if (bound < xk - kTolerance) {
        ws.reset();
        return {bound, false, level};
      }
    }
    frontier_degree = 0.0;
    const distance next = level + 1;
    for (std::size_t head = level_begin; head < level_end; ++head) {
      for (node z : g.out_neighbors(queue[head])) {
        if (dist[z] != kUnreached) continue;
        dist[z] = next;
        queue.push_back(z);
        frontier_degree += static_cast<double>(g.out_degree(z));
      }
    }
    const std::size_t added = queue.size() - level_end;
    if (added == 0) {
      ws.reset();
      return {exact_sum, true, level};
    }
    exact_sum += static_cast<double>(added) / static_cast<double>(next);
    visited += static_cast<double>(added);
    level_begin = level_end;
    level_end = queue.size();
    level = next;
  }
}

/// Counters reported by the static algorithms.
struct StaticStats {
  count bfs_runs = 0;
  count exact_runs = 0;
};

struct StaticResult {
  TopKList topk;
  NodeBoundState state;
  StaticStats stats;
};

/// NBCut: BFScut from every node in `node_ordering` order, pruning with the
/// current k-th best exact value.
/// `reach` supplies reachable_ubound(v); either a ComponentTracker or ComponentSizes.
template <class Reach>
StaticResult nbcut_topk(const Graph& g, const Reach& tracker, count k) {
  const count n = g.num_nodes();
  StaticResult result{TopKList(k), NodeBoundState(n), {}};
  auto& state = result.state;
  for (node v = 0; v < n; ++v) state.r[v] = tracker.reachable_ubound(v);
  BfsWorkspace ws(n);
  for (node v : node_ordering(g)) {
    const CutResult cut = bfs_cut(g, state, v, result.topk.xk(), ws);
    ++result.stats.bfs_runs;
    state.cbar[v] = cut.cbar;
    state.exact[v] = cut.exact;
    state.dcut[v] = cut.dcut;
    if (cut.exact) {
      ++result.stats.exact_runs;
      result.topk.insert(v, cut.cbar);
    }
  }
  state.graph_version = g.version();
  return result;
}

inline StaticResult nbcut_topk(const Graph& g, count k) { return nbcut_topk(g, ComponentSizes(g), k); }

/// Neighbourhood bound d1 + (r - d1)/2: out-neighbours at distance 1, every
/// other reachable node at distance at least 2.
inline double neighbourhood_bound(count out_degree, count reachable) {
  const double d1 = static_cast<double>(out_degree);
  return d1 + (static_cast<double>(reachable) - d1) / 2.0;
}

template <class Reach>
NodeBoundState compute_initial_bounds(const Graph& g, const Reach& tracker) {
  NodeBoundState state(g.num_nodes());
  for (node v = 0; v < g.num_nodes(); ++v) {
    state.r[v] = tracker.reachable_ubound(v);
    state.cbar[v] = neighbourhood_bound(g.out_degree(v), state.r[v]);
  }
  state.graph_version = g.version();
  return state;
}

/// Full BFS from v returning c(v). Marks v exact and tightens the bound of
/// every other node w reached by v, using d(w,y) >= max(1, |d(v,w) - d(v,y)|)
/// (undirected) or d(w,y) >= max(1, d(v,y) - d(v,w)) (directed). Every node w
/// reaches is also reached by v, so no reachability correction is needed.
inline double bfs_bound(const Graph& g, NodeBoundState& state, node v, BfsWorkspace& ws) {
  ws.ensure(g.num_nodes());
  ws.start(v);
  auto& dist = ws.dist();
  auto& queue = ws.queue();
  std::vector<count> levels{1};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const node x = queue[head];
    const distance next = dist[x] + 1;
    for (node z : g.out_neighbors(x)) {
      if (dist[z] != kUnreached) continue;
      dist[z] = next;
      queue.push_back(z);
      if (levels.size() <= next) levels.push_back(0);
      ++levels[next];
    }
  }
  const double exact = closeness_from_levels(levels);
  state.cbar[v] = exact;
  state.exact[v] = 1;
  state.dcut[v] = kNoCutoff;

  // Per-level bound table costs O(ecc^2); skip tightening where that would
  // dominate the BFS itself.
  const std::size_t num_levels = levels.size();
  const double work = static_cast<double>(num_levels) * static_cast<double>(num_levels);
  if (num_levels > 1 && work <= 8.0 * static_cast<double>(g.num_nodes() + g.num_edges())) {
    std::vector<double> level_bound(num_levels, 0.0);
    for (std::size_t at = 0; at < num_levels; ++at) {
      double sum = 0.0;
      for (std::size_t j = 0; j < num_levels; ++j) {
        const long gap = g.directed() ? static_cast<long>(j) - static_cast<long>(at)
                                      : std::abs(static_cast<long>(j) - static_cast<long>(at));
        sum += static_cast<double>(levels[j]) / static_cast<double>(std::max(1L, gap));
      }
      // Drop w's own term (it sits at gap 0, counted as 1).
      level_bound[at] = sum - 1.0;
    }
    for (std::size_t idx = 1; idx < queue.size(); ++idx) {
      const node w = queue[idx];
      if (state.exact[w]) continue;
      state.cbar[w] = std::min(state.cbar[w], level_bound[dist[w]]);
    }
  }
  ws.reset();
  return exact;
}

namespace detail {

struct QueueEntry {
  double value;
  node id;
};

/// Max-heap order on bounds; among equal bounds the smaller id comes first.
struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.id > b.id;
  }
};

using BoundQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder>;

/// Pops the node with the highest current bound, refreshing entries whose
/// bound was tightened after they were pushed. Returns kNoNode when empty.
inline node pop_max(BoundQueue& queue, const NodeBoundState& state) {
  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    if (top.value > state.cbar[top.id]) {
      queue.push({state.cbar[top.id], top.id});
      continue;
    }
    return top.id;
  }
  return kNoNode;
}

/// Runs bfs_bound from queued nodes in bound order until k exact values beat
/// every remaining bound.
/// Calls `on_search(v)` for every node a BFS is run from; returns the number
/// of searches.
template <class OnSearch>
count drain_with_bfs_bound(const Graph& g, NodeBoundState& state, TopKList& topk, BoundQueue& queue,
                           BfsWorkspace& ws, OnSearch&& on_search) {
  count runs = 0;
  while (true) {
    const node v = pop_max(queue, state);
    if (v == kNoNode) break;
    if (topk.full() && state.cbar[v] < topk.xk() - kTolerance) break;
    if (topk.contains(v)) continue;
    if (!state.exact[v]) {
      bfs_bound(g, state, v, ws);
      on_search(v);
      ++runs;
    }
    topk.insert(v, state.cbar[v]);
  }
  return runs;
}

inline count drain_with_bfs_bound(const Graph& g, NodeBoundState& state, TopKList& topk, BoundQueue& queue,
                                  BfsWorkspace& ws) {
  return drain_with_bfs_bound(g, state, topk, queue, ws, [](node) {});
}

}  // namespace detail

/// NBBound: extract the node with the highest bound, compute its exact value
/// with bfs_bound (tightening everyone else), until k exact values dominate
/// all remaining bounds.
template <class Reach>
StaticResult nbbound_topk(const Graph& g, const Reach& tracker, count k) {
  StaticResult result{TopKList(k), compute_initial_bounds(g, tracker), {}};
  std::vector<detail::QueueEntry> entries;
  entries.reserve(g.num_nodes());
  for (node v = 0; v < g.num_nodes(); ++v) entries.push_back({result.state.cbar[v], v});
  detail::BoundQueue queue(detail::QueueOrder{}, std::move(entries));
  BfsWorkspace ws(g.num_nodes());
  result.stats.bfs_runs = detail::drain_with_bfs_bound(g, result.state, result.topk, queue, ws);
  result.stats.exact_runs = result.stats.bfs_runs;
  result.state.graph_version = g.version();
  return result;
}

inline StaticResult nbbound_topk(const Graph& g, count k) { return nbbound_topk(g, ComponentSizes(g), k); }

}  // namespace dyntopk
