#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dyntopk/errors.hpp"

namespace dyntopk {

using node = std::uint32_t;
using count = std::size_t;
using distance = std::uint32_t;

inline constexpr distance kUnreached = std::numeric_limits<distance>::max();
inline constexpr node kNoNode = std::numeric_limits<node>::max();

/// Unweighted graph over the fixed node set 0..n-1, stored as adjacency lists.
///
/// Undirected graphs keep each edge in both endpoints' lists and count it once.
/// Directed graphs additionally keep in-adjacency so that distances *to* a node
/// can be computed by a reverse BFS. Self-loops and parallel edges are rejected.
class Graph {
public:
  Graph() = default;
  Graph(count n, bool directed) : directed_(directed), out_(n) {
    if (directed_) in_.resize(n);
  }

  count num_nodes() const noexcept { return out_.size(); }
  count num_edges() const noexcept { return edges_; }
  bool directed() const noexcept { return directed_; }

  /// Incremented by every successful mutation.
  std::uint64_t version() const noexcept { return version_; }

  std::span<const node> out_neighbors(node v) const { return out_[v]; }
  std::span<const node> in_neighbors(node v) const { return directed_ ? in_[v] : out_[v]; }
  std::span<const node> neighbors(node v, bool reverse) const {
    return reverse ? in_neighbors(v) : out_neighbors(v);
  }
  count out_degree(node v) const { return out_[v].size(); }
  count in_degree(node v) const { return directed_ ? in_[v].size() : out_[v].size(); }

  bool valid(node v) const noexcept { return v < out_.size(); }

  bool has_edge(node u, node v) const {
    if (!valid(u) || !valid(v)) return false;
    // Scan the shorter list; for directed graphs in_[v] holds the same arc.
    if (directed_) {
      const auto& a = out_[u];
      const auto& b = in_[v];
      if (a.size() <= b.size()) return std::find(a.begin(), a.end(), v) != a.end();
      return std::find(b.begin(), b.end(), u) != b.end();
    }
    const auto& a = out_[u];
    const auto& b = out_[v];
    if (a.size() <= b.size()) return std::find(a.begin(), a.end(), v) != a.end();
    return std::find(b.begin(), b.end(), u) != b.end();
  }

  /// True if u and v are adjacent when edge directions are ignored.
  bool adjacent_undirected(node u, node v) const {
    return has_edge(u, v) || (directed_ && has_edge(v, u));
  }

  void insert_edge(node u, node v) {
    check_nodes(u, v);
    if (u == v) throw PreconditionError("self-loop " + std::to_string(u));
    if (has_edge(u, v)) throw PreconditionError("edge already present: " + edge_name(u, v));
    out_[u].push_back(v);
    if (directed_)
      in_[v].push_back(u);
    else
      out_[v].push_back(u);
    ++edges_;
    ++version_;
  }

  void delete_edge(node u, node v) {
    check_nodes(u, v);
    if (u == v || !has_edge(u, v)) throw PreconditionError("edge absent: " + edge_name(u, v));
    erase_one(out_[u], v);
    if (directed_)
      erase_one(in_[v], u);
    else
      erase_one(out_[v], u);
    --edges_;
    ++version_;
  }

  /// Current edge set, each edge once; undirected edges reported with u < v.
  std::vector<std::pair<node, node>> edges() const {
    std::vector<std::pair<node, node>> result;
    result.reserve(edges_);
    for (node u = 0; u < out_.size(); ++u)
      for (node v : out_[u])
        if (directed_ || u < v) result.emplace_back(u, v);
    return result;
  }

  /// Bytes held by the adjacency structure.
  count memory_bytes() const {
    count bytes = (out_.capacity() + in_.capacity()) * sizeof(std::vector<node>);
    for (const auto& l : out_) bytes += l.capacity() * sizeof(node);
    for (const auto& l : in_) bytes += l.capacity() * sizeof(node);
    return bytes;
  }

private:
  static void erase_one(std::vector<node>& list, node x) {
    auto it = std::find(list.begin(), list.end(), x);
    *it = list.back();
    list.pop_back();
  }

  void check_nodes(node u, node v) const {
    if (!valid(u) || !valid(v)) throw PreconditionError("node id out of range: " + edge_name(u, v));
  }

  std::string edge_name(node u, node v) const {
    return "(" + std::to_string(u) + (directed_ ? "->" : ",") + std::to_string(v) + ")";
  }

  bool directed_ = false;
  std::vector<std::vector<node>> out_;
  std::vector<std::vector<node>> in_;
  count edges_ = 0;
  std::uint64_t version_ = 0;
};

/// Distances from (or, reversed, to) a source.
///
/// `levels[i]` is the number of nodes at distance exactly i; `levels[0] == 1`
/// counts the source itself, so `reached == sum(levels) - 1`.
struct BfsResult {
  std::vector<distance> dist;
  std::vector<count> levels;
  count reached = 0;

  distance eccentricity() const { return levels.empty() ? 0 : static_cast<distance>(levels.size() - 1); }
};

inline BfsResult bfs(const Graph& g, node source, bool reverse = false) {
  BfsResult result;
  result.dist.assign(g.num_nodes(), kUnreached);
  std::vector<node> queue;
  queue.reserve(64);
  queue.push_back(source);
  result.dist[source] = 0;
  result.levels.push_back(1);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const node x = queue[head];
    const distance next = result.dist[x] + 1;
    for (node y : g.neighbors(x, reverse)) {
      if (result.dist[y] != kUnreached) continue;
      result.dist[y] = next;
      if (result.levels.size() <= next) result.levels.push_back(0);
      ++result.levels[next];
      queue.push_back(y);
    }
  }
  result.reached = queue.size() - 1;
  return result;
}

/// Result of parsing an edge list.
struct LoadResult {
  Graph graph;
  count duplicates_dropped = 0;
  count self_loops_dropped = 0;
  /// Original id of each node when the loader compacted sparse ids; empty otherwise.
  std::vector<std::int64_t> original_ids;
};

struct LoadOptions {
  /// Compact ids to 0..n-1 in order of first appearance.
  bool remap_ids = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::int64_t parse_id(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected integer node id, got '" + std::string(token) + "'");
  if (value < 0) throw ParseError(line, "negative node id " + std::string(token));
  if (static_cast<std::uint64_t>(value) >= kNoNode) throw ParseError(line, "node id too large " + std::string(token));
  return value;
}

inline std::uint64_t pair_key(node u, node v) { return (static_cast<std::uint64_t>(u) << 32) | v; }

}  // namespace detail

/// Reads a whitespace-separated edge list. Lines starting with '#' or '%' and
/// blank lines are ignored; every other line must hold exactly two non-negative
/// integer ids. Duplicate edges and self-loops are dropped and counted.
inline LoadResult load_edge_list(std::istream& in, bool directed, LoadOptions options = {}) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::trim(line);
    if (rest.empty() || rest.front() == '#' || rest.front() == '%') continue;
    std::string_view tokens[2];
    std::size_t found = 0;
    while (!rest.empty()) {
      const auto stop = rest.find_first_of(" \t\r\v\f");
      const std::string_view token = rest.substr(0, stop);
      if (found == 2) throw ParseError(line_no, "expected two node ids, got more");
      tokens[found++] = token;
      rest = stop == std::string_view::npos ? std::string_view{} : detail::trim(rest.substr(stop));
    }
    if (found != 2) throw ParseError(line_no, "expected two node ids");
    raw.emplace_back(detail::parse_id(tokens[0], line_no), detail::parse_id(tokens[1], line_no));
  }

  LoadResult result;
  std::unordered_map<std::int64_t, node> remap;
  auto map_id = [&](std::int64_t id) -> node {
    if (!options.remap_ids) return static_cast<node>(id);
    auto [it, inserted] = remap.try_emplace(id, static_cast<node>(result.original_ids.size()));
    if (inserted) result.original_ids.push_back(id);
    return it->second;
  };

  std::vector<std::pair<node, node>> edges;
  edges.reserve(raw.size());
  count n = 0;
  for (auto [a, b] : raw) {
    const node u = map_id(a);
    const node v = map_id(b);
    n = std::max<count>(n, std::max(u, v) + count{1});
    edges.emplace_back(u, v);
  }

  Graph g(n, directed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) {
      ++result.self_loops_dropped;
      continue;
    }
    const auto key = directed ? detail::pair_key(u, v) : detail::pair_key(std::min(u, v), std::max(u, v));
    if (!seen.insert(key).second) {
      ++result.duplicates_dropped;
      continue;
    }
    g.insert_edge(u, v);
  }
  result.graph = std::move(g);
  return result;
}

}  // namespace dyntopk
