#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "dyntopk/graph.hpp"

namespace dyntopk {

/// Maintains (weakly) connected components of a graph under single-edge updates
/// with a spanning forest of the undirected skeleton.
///
/// Insertions merge components by relabeling the smaller one. Deleting a forest
/// edge runs a BFS from one endpoint that stops as soon as it reaches the other;
/// if it does, a replacement forest edge is taken from the discovered path,
/// otherwise the component splits and the smaller side gets a fresh label.
class ComponentTracker {
public:
  ComponentTracker() = default;

  explicit ComponentTracker(const Graph& g)
      : comp_(g.num_nodes(), kNoLabel), forest_adj_(g.num_nodes()), mark_(g.num_nodes(), 0) {
    std::vector<node> queue;
    for (node s = 0; s < g.num_nodes(); ++s) {
      if (comp_[s] != kNoLabel) continue;
      const auto label = new_label();
      comp_[s] = label;
      queue.assign(1, s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const node x = queue[head];
        auto visit = [&](node y) {
          if (comp_[y] != kNoLabel) return;
          comp_[y] = label;
          add_forest_edge(x, y);
          queue.push_back(y);
        };
        for (node y : g.out_neighbors(x)) visit(y);
        if (g.directed())
          for (node y : g.in_neighbors(x)) visit(y);
      }
      size_[label] = queue.size();
    }
  }

  count num_nodes() const noexcept { return comp_.size(); }
  std::uint32_t label(node v) const { return comp_[v]; }
  count component_size(node v) const { return size_[comp_[v]]; }

  /// Upper bound on the number of nodes reachable from y (exact when undirected).
  count reachable_ubound(node y) const { return size_[comp_[y]] - 1; }

  count num_components() const {
    return static_cast<count>(std::count_if(size_.begin(), size_.end(), [](count s) { return s > 0; }));
  }

  bool is_forest_edge(node u, node v) const { return forest_.count(key(u, v)) != 0; }
  count forest_size() const noexcept { return forest_.size(); }

  /// Call after the edge (u,v) has been inserted into g.
  void on_insert(const Graph& g, node u, node v) {
    (void)g;
    if (comp_[u] == comp_[v]) return;
    // Relabel the smaller side by walking its forest tree.
    node small = u;
    node large = v;
    if (size_[comp_[u]] > size_[comp_[v]]) std::swap(small, large);
    const auto from = comp_[small];
    const auto to = comp_[large];
    relabel_tree(small, to);
    size_[to] += size_[from];
    size_[from] = 0;
    free_labels_.push_back(from);
    add_forest_edge(u, v);
  }

  /// Call after the edge (u,v) has been deleted from g.
  void on_delete(const Graph& g, node u, node v) {
    if (!is_forest_edge(u, v)) return;
    // A reverse arc keeps the skeleton edge alive.
    if (g.adjacent_undirected(u, v)) return;
    remove_forest_edge(u, v);

    // Pruned BFS from u in the updated skeleton, interrupted once v is hit.
    std::vector<node>& queue = scratch_queue_;
    std::vector<node>& parent = scratch_parent_;
    if (parent.size() < g.num_nodes()) parent.assign(g.num_nodes(), kNoNode);
    queue.assign(1, u);
    parent[u] = u;
    bool hit = false;
    for (std::size_t head = 0; head < queue.size() && !hit; ++head) {
      const node x = queue[head];
      auto visit = [&](node y) {
        if (hit || parent[y] != kNoNode) return;
        parent[y] = x;
        queue.push_back(y);
        if (y == v) hit = true;
      };
      for (node y : g.out_neighbors(x)) visit(y);
      if (g.directed())
        for (node y : g.in_neighbors(x)) visit(y);
    }

    if (hit) {
      install_replacement(u, v, parent);
    } else {
      split(u, v, queue);
    }
    for (node x : queue) parent[x] = kNoNode;
  }

  /// Bytes held by the tracker (labels, sizes and forest).
  count memory_bytes() const {
    count bytes = comp_.capacity() * sizeof(std::uint32_t) + size_.capacity() * sizeof(count) +
                  mark_.capacity() * sizeof(std::uint32_t) + forest_.size() * 3 * sizeof(std::uint64_t) +
                  forest_adj_.capacity() * sizeof(std::vector<node>);
    for (const auto& l : forest_adj_) bytes += l.capacity() * sizeof(node);
    return bytes;
  }

private:
  static constexpr std::uint32_t kNoLabel = std::numeric_limits<std::uint32_t>::max();

  static std::uint64_t key(node a, node b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::uint32_t new_label() {
    if (!free_labels_.empty()) {
      const auto l = free_labels_.back();
      free_labels_.pop_back();
      return l;
    }
    size_.push_back(0);
    return static_cast<std::uint32_t>(size_.size() - 1);
  }

  void add_forest_edge(node a, node b) {
    forest_.insert(key(a, b));
    forest_adj_[a].push_back(b);
    forest_adj_[b].push_back(a);
  }

  void remove_forest_edge(node a, node b) {
    forest_.erase(key(a, b));
    auto drop = [](std::vector<node>& l, node x) {
      auto it = std::find(l.begin(), l.end(), x);
      *it = l.back();
      l.pop_back();
    };
    drop(forest_adj_[a], b);
    drop(forest_adj_[b], a);
  }

  /// Relabels every node in root's forest tree; returns how many were visited.
  count relabel_tree(node root, std::uint32_t to) {
    std::vector<node>& stack = scratch_stack_;
    stack.assign(1, root);
    const auto from = comp_[root];
    comp_[root] = to;
    count visited = 0;
    while (!stack.empty()) {
      const node x = stack.back();
      stack.pop_back();
      ++visited;
      for (node y : forest_adj_[x]) {
        if (comp_[y] != from) continue;
        comp_[y] = to;
        stack.push_back(y);
      }
    }
    return visited;
  }

  /// The forest lost (u,v) but the skeleton still connects u to v along the
  /// BFS parent chain; one edge of that path crosses between the two trees.
  void install_replacement(node u, node v, const std::vector<node>& parent) {
    ++epoch_;
    if (epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
    // Mark u's tree.
    std::vector<node>& stack = scratch_stack_;
    stack.assign(1, u);
    mark_[u] = epoch_;
    while (!stack.empty()) {
      const node x = stack.back();
      stack.pop_back();
      for (node y : forest_adj_[x]) {
        if (mark_[y] == epoch_) continue;
        mark_[y] = epoch_;
        stack.push_back(y);
      }
    }
    // Walk back from v (outside u's tree) until the first node inside it.
    node x = v;
    while (mark_[parent[x]] != epoch_) x = parent[x];
    add_forest_edge(parent[x], x);
  }

  void split(node u, node v, const std::vector<node>& u_side) {
    const auto old_label = comp_[u];
    const count total = size_[old_label];
    const count u_count = u_side.size();
    const auto fresh = new_label();
    if (u_count <= total - u_count) {
      for (node x : u_side) comp_[x] = fresh;
      size_[fresh] = u_count;
    } else {
      size_[fresh] = relabel_tree(v, fresh);
    }
    size_[old_label] = total - size_[fresh];
  }

  std::vector<std::uint32_t> comp_;
  std::vector<count> size_;
  std::vector<std::uint32_t> free_labels_;
  std::unordered_set<std::uint64_t> forest_;
  std::vector<std::vector<node>> forest_adj_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<node> scratch_queue_;
  std::vector<node> scratch_parent_;
  std::vector<node> scratch_stack_;
};

/// One-shot component sizes for static runs, without the spanning forest.
class ComponentSizes {
public:
  explicit ComponentSizes(const Graph& g) : comp_(g.num_nodes(), kNone) {
    std::vector<node> queue;
    for (node s = 0; s < g.num_nodes(); ++s) {
      if (comp_[s] != kNone) continue;
      const auto label = static_cast<std::uint32_t>(size_.size());
      comp_[s] = label;
      queue.assign(1, s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const node x = queue[head];
        auto visit = [&](node y) {
          if (comp_[y] != kNone) return;
          comp_[y] = label;
          queue.push_back(y);
        };
        for (node y : g.out_neighbors(x)) visit(y);
        if (g.directed())
          for (node y : g.in_neighbors(x)) visit(y);
      }
      size_.push_back(queue.size());
    }
  }

  count component_size(node v) const { return size_[comp_[v]]; }
  count reachable_ubound(node v) const { return size_[comp_[v]] - 1; }

private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp_;
  std::vector<count> size_;
};

}  // namespace dyntopk
