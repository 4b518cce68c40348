#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dyntopk/component_tracker.hpp"
#include "dyntopk/errors.hpp"
#include "dyntopk/graph.hpp"
#include "dyntopk/static_topk.hpp"
#include "dyntopk/topk_list.hpp"

namespace dyntopk {

enum class Variant { NBCut, NBBound };

inline const char* to_string(Variant v) { return v == Variant::NBCut ? "nbcut" : "nbbound"; }

/// Distances to both endpoints of an edge, plus the per-level counts of the
/// BFS from each endpoint needed by the distance-based bound.
///
/// For undirected graphs the distances and levels come from the same BFS. For
/// directed graphs `dist_to_*` are reverse-BFS distances d(., x) and
/// `levels_from_u` is the forward BFS from the tail u.
struct EndpointDistances {
  std::vector<distance> dist_to_u;
  std::vector<distance> dist_to_v;
  std::vector<count> levels_from_u;
  std::vector<count> levels_from_v;
};

inline EndpointDistances endpoint_distances(const Graph& g, node u, node v, bool with_levels = true) {
  EndpointDistances e;
  if (!g.directed()) {
    auto from_u = bfs(g, u);
    auto from_v = bfs(g, v);
    e.dist_to_u = std::move(from_u.dist);
    e.dist_to_v = std::move(from_v.dist);
    e.levels_from_u = std::move(from_u.levels);
    e.levels_from_v = std::move(from_v.levels);
    return e;
  }
  e.dist_to_u = bfs(g, u, /*reverse=*/true).dist;
  e.dist_to_v = bfs(g, v, /*reverse=*/true).dist;
  if (with_levels) e.levels_from_u = bfs(g, u).levels;
  return e;
}

/// Nodes whose distance to some node changed, with the endpoint distances
/// before and after the update.
struct AffectedInfo {
  node u = kNoNode;
  node v = kNoNode;
  std::vector<node> affected;
  EndpointDistances before;
  EndpointDistances after;

  const std::vector<distance>& dist_u_old() const { return before.dist_to_u; }
  const std::vector<distance>& dist_u_new() const { return after.dist_to_u; }
  const std::vector<distance>& dist_v_old() const { return before.dist_to_v; }
  const std::vector<distance>& dist_v_new() const { return after.dist_to_v; }
};

/// A node is affected iff its distance to u or to v changed. `before` must be
/// captured on the graph prior to the mutation; `g` is the updated graph.
inline AffectedInfo affected_nodes(EndpointDistances before, const Graph& g, node u, node v, bool with_levels = true) {
  AffectedInfo info;
  info.u = u;
  info.v = v;
  info.after = endpoint_distances(g, u, v, with_levels);
  info.before = std::move(before);
  const auto& bu = info.before.dist_to_u;
  const auto& bv = info.before.dist_to_v;
  const auto& au = info.after.dist_to_u;
  const auto& av = info.after.dist_to_v;
  for (node y = 0; y < g.num_nodes(); ++y)
    if (bu[y] != au[y] || bv[y] != av[y]) info.affected.push_back(y);
  return info;
}

namespace detail {

inline distance plus_one(distance d) { return d == kUnreached ? kUnreached : d + 1; }

inline std::vector<count> levels_of(const std::vector<distance>& dist) {
  std::vector<count> levels;
  for (distance d : dist) {
    if (d == kUnreached) continue;
    if (levels.size() <= d) levels.resize(d + 1, 0);
    ++levels[d];
  }
  return levels;
}

}  // namespace detail

/// Same result as affected_nodes for the insertion of (u,v), but the new
/// endpoint distances are derived from the old ones: a shortest path that
/// uses the new edge reaches one endpoint through the other. Only directed
/// graphs need one search of the updated graph, for the levels from u.
inline AffectedInfo affected_by_insertion(EndpointDistances before, const Graph& g, node u, node v) {
  AffectedInfo info;
  info.u = u;
  info.v = v;
  const auto& bu = before.dist_to_u;
  const auto& bv = before.dist_to_v;
  const count n = g.num_nodes();
  auto& au = info.after.dist_to_u;
  auto& av = info.after.dist_to_v;
  av.resize(n);
  if (g.directed()) {
    au = bu;  // paths into u cannot use an arc leaving u
    for (node y = 0; y < n; ++y) av[y] = std::min(bv[y], detail::plus_one(bu[y]));
    info.after.levels_from_u = bfs(g, u).levels;
  } else {
    au.resize(n);
    for (node y = 0; y < n; ++y) {
      au[y] = std::min(bu[y], detail::plus_one(bv[y]));
      av[y] = std::min(bv[y], detail::plus_one(bu[y]));
    }
    info.after.levels_from_u = detail::levels_of(au);
    info.after.levels_from_v = detail::levels_of(av);
  }
  for (node y = 0; y < n; ++y)
    if (bu[y] != au[y] || bv[y] != av[y]) info.affected.push_back(y);
  info.before = std::move(before);
  return info;
}

/// n'_i - n_i for i = 1.. max eccentricity, element i-1 holding level i.
inline std::vector<long long> level_diffs(std::span<const count> before, std::span<const count> after) {
  const std::size_t len = std::max(before.size(), after.size());
  std::vector<long long> diffs;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = i < before.size() ? static_cast<long long>(before[i]) : 0LL;
    const auto a = i < after.size() ? static_cast<long long>(after[i]) : 0LL;
    diffs.push_back(a - b);
  }
  return diffs;
}

/// Level differences for the BFS from u (or v, when `from_v`).
inline std::vector<long long> level_diffs(const AffectedInfo& info, bool from_v = false) {
  return from_v ? level_diffs(info.before.levels_from_v, info.after.levels_from_v)
                : level_diffs(info.before.levels_from_u, info.after.levels_from_u);
}

struct UpdateStats {
  count affected_count = 0;
  count faraway_count = 0;
  count boundary_count = 0;
  count distbound_count = 0;
  /// Affected nodes that needed a new search.
  count bfscut_count = 0;
  /// All searches, including unaffected nodes revisited after a deletion.
  count bfs_runs = 0;
};

namespace detail {

struct LevelDelta {
  distance level;
  double delta;
};

inline std::vector<LevelDelta> nonzero_deltas(std::span<const count> before, std::span<const count> after) {
  std::vector<LevelDelta> out;
  const auto diffs = level_diffs(before, after);
  for (std::size_t i = 0; i < diffs.size(); ++i)
    if (diffs[i] != 0) out.push_back({static_cast<distance>(i + 1), static_cast<double>(diffs[i])});
  return out;
}

/// sum_i (n'_i - n_i) / (i + d(y,u)).
inline double distance_increment(const std::vector<LevelDelta>& deltas, distance to_endpoint) {
  double sum = 0.0;
  for (const auto& d : deltas) sum += d.delta / static_cast<double>(d.level + to_endpoint);
  return sum;
}

/// Per affected node: the distance to the endpoint new shortest paths enter
/// through, and which endpoint's level deltas apply.
struct EndpointChoice {
  distance to_endpoint;
  bool via_v;
};

inline EndpointChoice closer_endpoint(const Graph& g, const AffectedInfo& info, node y) {
  const distance du = info.before.dist_to_u[y];
  if (g.directed()) return {du, false};
  const distance dv = info.before.dist_to_v[y];
  if (du <= dv) return {du, false};
  return {dv, true};
}

inline void check_version(const Graph& g, const NodeBoundState& state) {
  if (g.version() != state.graph_version + 1)
    throw ContractError("bound state describes graph version " + std::to_string(state.graph_version) +
                        " but graph is at version " + std::to_string(g.version()) +
                        "; exactly one mutation is expected between updates");
}

}  // namespace detail

/// Updates an NBCut state after the edge (u,v) was inserted. Affected nodes
/// whose interrupted BFS never reached the endpoint (far-away) or stopped
/// exactly at it (boundary) get an O(1) bound correction; the others receive
/// the distance-based increment. Only nodes whose new bound reaches the
/// current k-th value are searched again.
inline UpdateStats update_insert_nbcut(const Graph& g, NodeBoundState& state, TopKList& topk,
                                       const ComponentTracker& tracker, const AffectedInfo& info) {
  detail::check_version(g, state);
  UpdateStats stats;
  stats.affected_count = info.affected.size();

  double xk = topk.xk();
  for (node w : info.affected) topk.remove(w);

  const auto deltas_u = detail::nonzero_deltas(info.before.levels_from_u, info.after.levels_from_u);
  const auto deltas_v = detail::nonzero_deltas(info.before.levels_from_v, info.after.levels_from_v);
  BfsWorkspace ws(g.num_nodes());

  for (node y : info.affected) {
    const auto [to_endpoint, via_v] = detail::closer_endpoint(g, info, y);
    const double r_old = static_cast<double>(state.r[y]);
    const count r_new = tracker.reachable_ubound(y);
    const distance cut = state.dcut[y];
    double bound = state.cbar[y];
    if (!state.exact[y] && cut < to_endpoint) {
      ++stats.faraway_count;
      bound += (static_cast<double>(r_new) - r_old) / (static_cast<double>(cut) + 2.0);
    } else if (!state.exact[y] && cut == to_endpoint) {
      ++stats.boundary_count;
      const double c = static_cast<double>(cut);
      bound += 1.0 / (c + 1.0) - (r_old - static_cast<double>(r_new) + 1.0) / (c + 2.0);
    } else {
      ++stats.distbound_count;
      bound += detail::distance_increment(via_v ? deltas_v : deltas_u, to_endpoint);
      state.dcut[y] = kNoCutoff;
      state.exact[y] = 0;
    }
    state.cbar[y] = bound;
    state.r[y] = r_new;

    if (bound >= xk - kTolerance) {
      const CutResult res = bfs_cut(g, state, y, xk, ws);
      ++stats.bfscut_count;
      ++stats.bfs_runs;
      state.cbar[y] = res.cbar;
      state.exact[y] = res.exact;
      state.dcut[y] = res.dcut;
      if (res.exact && res.cbar >= xk - kTolerance) {
        topk.insert(y, res.cbar);
        if (topk.full()) xk = topk.xk();
      }
    }
  }
  state.graph_version = g.version();
  return stats;
}

/// Updates an NBBound state after the edge (u,v) was inserted: affected nodes
/// get the distance-based increment and are re-ranked through the bound queue.
inline UpdateStats update_insert_nbbound(const Graph& g, NodeBoundState& state, TopKList& topk,
                                         const ComponentTracker& tracker, const AffectedInfo& info) {
  detail::check_version(g, state);
  UpdateStats stats;
  stats.affected_count = info.affected.size();
  for (node w : info.affected) topk.remove(w);

  const auto deltas_u = detail::nonzero_deltas(info.before.levels_from_u, info.after.levels_from_u);
  const auto deltas_v = detail::nonzero_deltas(info.before.levels_from_v, info.after.levels_from_v);
  std::vector<detail::QueueEntry> entries;
  entries.reserve(info.affected.size());
  for (node y : info.affected) {
    const auto [to_endpoint, via_v] = detail::closer_endpoint(g, info, y);
    ++stats.distbound_count;
    state.cbar[y] += detail::distance_increment(via_v ? deltas_v : deltas_u, to_endpoint);
    state.exact[y] = 0;
    state.dcut[y] = kNoCutoff;
    state.r[y] = tracker.reachable_ubound(y);
    entries.push_back({state.cbar[y], y});
  }
  detail::BoundQueue queue(detail::QueueOrder{}, std::move(entries));
  BfsWorkspace ws(g.num_nodes());
  stats.bfs_runs = detail::drain_with_bfs_bound(g, state, topk, queue, ws);
  stats.bfscut_count = stats.bfs_runs;
  state.graph_version = g.version();
  return stats;
}

/// Updates either state after the edge (u,v) was deleted. Closeness can only
/// drop, so previous bounds stay valid; affected nodes lose their exact flag.
/// If no top-k member is affected nothing else changes. Otherwise nodes are
/// visited in bound order and non-exact ones recomputed until the first k
/// positions are exact.
inline UpdateStats update_delete(const Graph& g, NodeBoundState& state, TopKList& topk,
                                 const ComponentTracker& tracker, const AffectedInfo& info, Variant variant) {
  detail::check_version(g, state);
  UpdateStats stats;
  stats.affected_count = info.affected.size();

  bool member_affected = false;
  for (node y : info.affected) {
    member_affected |= topk.remove(y);
    state.exact[y] = 0;
    state.dcut[y] = kNoCutoff;
    // A split may have shrunk the reachable set.
    state.r[y] = std::min(state.r[y], tracker.reachable_ubound(y));
    state.cbar[y] = std::min(state.cbar[y], neighbourhood_bound(g.out_degree(y), state.r[y]));
  }
  if (!member_affected) {
    state.graph_version = g.version();
    return stats;
  }

  std::vector<detail::QueueEntry> entries;
  entries.reserve(g.num_nodes());
  for (node y = 0; y < g.num_nodes(); ++y) entries.push_back({state.cbar[y], y});
  detail::BoundQueue queue(detail::QueueOrder{}, std::move(entries));
  BfsWorkspace ws(g.num_nodes());

  std::vector<std::uint8_t> is_affected(g.num_nodes(), 0);
  for (node y : info.affected) is_affected[y] = 1;
  auto on_search = [&](node y) {
    ++stats.bfs_runs;
    stats.bfscut_count += is_affected[y];
  };
  if (variant == Variant::NBBound) {
    detail::drain_with_bfs_bound(g, state, topk, queue, ws, on_search);
  } else {
    while (true) {
      const node y = detail::pop_max(queue, state);
      if (y == kNoNode) break;
      if (topk.full() && state.cbar[y] < topk.xk() - kTolerance) break;
      if (topk.contains(y)) continue;
      if (!state.exact[y]) {
        const CutResult res = bfs_cut(g, state, y, topk.xk(), ws);
        on_search(y);
        state.cbar[y] = res.cbar;
        state.exact[y] = res.exact;
        state.dcut[y] = res.dcut;
      }
      if (state.exact[y]) topk.insert(y, state.cbar[y]);
    }
  }
  state.graph_version = g.version();
  return stats;
}

/// Fully dynamic top-k harmonic closeness over a single graph.
///
/// Owns the graph, the component tracker, the per-node bound state and the
/// current top-k list. Construction runs the chosen static algorithm; each
/// edge update then refreshes the list incrementally.
class DynamicTopK {
public:
  DynamicTopK(Graph g, count k, Variant variant) : graph_(std::move(g)), tracker_(graph_), variant_(variant) {
    auto initial = variant_ == Variant::NBCut ? nbcut_topk(graph_, tracker_, k) : nbbound_topk(graph_, tracker_, k);
    topk_ = std::move(initial.topk);
    state_ = std::move(initial.state);
  }

  const Graph& graph() const noexcept { return graph_; }
  const ComponentTracker& tracker() const noexcept { return tracker_; }
  const NodeBoundState& state() const noexcept { return state_; }
  const TopKList& topk() const noexcept { return topk_; }
  Variant variant() const noexcept { return variant_; }
  count k() const noexcept { return topk_.capacity(); }

  /// Direct access to the bound state, for fault-injection tests.
  NodeBoundState& mutable_state() noexcept { return state_; }

  /// The AffectedInfo computed by the most recent update.
  const AffectedInfo& last_affected() const noexcept { return last_; }

  UpdateStats insert_edge(node u, node v) {
    if (u == v || !graph_.valid(u) || !graph_.valid(v) || graph_.has_edge(u, v))
      throw PreconditionError("cannot insert edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    auto before = endpoint_distances(graph_, u, v);
    graph_.insert_edge(u, v);
    tracker_.on_insert(graph_, u, v);
    last_ = affected_by_insertion(std::move(before), graph_, u, v);
    return variant_ == Variant::NBCut ? update_insert_nbcut(graph_, state_, topk_, tracker_, last_)
                                      : update_insert_nbbound(graph_, state_, topk_, tracker_, last_);
  }

  UpdateStats delete_edge(node u, node v) {
    if (!graph_.has_edge(u, v))
      throw PreconditionError("cannot delete edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    auto before = endpoint_distances(graph_, u, v, /*with_levels=*/false);
    graph_.delete_edge(u, v);
    tracker_.on_delete(graph_, u, v);
    last_ = affected_nodes(std::move(before), graph_, u, v, /*with_levels=*/false);
    return update_delete(graph_, state_, topk_, tracker_, last_, variant_);
  }

  /// Bytes of long-lived state: graph, tracker, bounds and the top-k list.
  count memory_bytes() const {
    return graph_.memory_bytes() + tracker_.memory_bytes() + state_.memory_bytes() +
           topk_.capacity() * sizeof(TopKEntry);
  }

private:
  Graph graph_;
  ComponentTracker tracker_;
  Variant variant_;
  NodeBoundState state_;
  TopKList topk_;
  AffectedInfo last_;
};

}  // namespace dyntopk
