#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "dyntopk/dynamic_topk.hpp"
#include "dyntopk/oracle.hpp"

namespace dyntopk {

/// Checks a top-k list against oracle values: the list must have min(k, n)
/// entries, the i-th value must match the oracle's i-th value, and every
/// listed node must carry its own true closeness. Node choice among equal
/// values is free. Returns a description of the first mismatch.
inline std::optional<std::string> check_topk(const TopKList& got, const oracle::OracleResult& truth, count k) {
  const TopKList want = oracle::oracle_topk(truth, k);
  std::ostringstream why;
  if (got.size() != want.size()) {
    why << "top-k size " << got.size() << ", expected " << want.size();
    return why.str();
  }
  std::unordered_set<node> seen;
  for (count i = 0; i < got.size(); ++i) {
    const auto& e = got[i];
    if (std::abs(e.value - want[i].value) > kTolerance) {
      why << "rank " << i << ": value " << e.value << ", expected " << want[i].value;
      return why.str();
    }
    if (!seen.insert(e.id).second) {
      why << "node " << e.id << " listed twice";
      return why.str();
    }
    if (std::abs(truth.closeness[e.id] - e.value) > kTolerance) {
      why << "node " << e.id << " listed with " << e.value << " but has closeness " << truth.closeness[e.id];
      return why.str();
    }
  }
  return std::nullopt;
}

/// Every bound must dominate the true closeness; exact flags must be honest.
inline std::optional<std::string> check_bounds(const NodeBoundState& state, const oracle::OracleResult& truth) {
  for (node y = 0; y < state.size(); ++y) {
    const double c = truth.closeness[y];
    if (state.cbar[y] < c - kTolerance) {
      std::ostringstream why;
      why << "node " << y << ": bound " << state.cbar[y] << " below closeness " << c;
      return why.str();
    }
    if (state.exact[y] && std::abs(state.cbar[y] - c) > kTolerance) {
      std::ostringstream why;
      why << "node " << y << ": marked exact with " << state.cbar[y] << " but closeness is " << c;
      return why.str();
    }
  }
  return std::nullopt;
}

/// Tracker labels must induce the same partition as a fresh skeleton
/// labeling, with matching sizes.
inline std::optional<std::string> check_components(const ComponentTracker& tracker, const Graph& g) {
  const auto fresh = oracle::skeleton_components(g);
  std::unordered_map<std::uint32_t, std::uint32_t> to_fresh;
  std::unordered_map<std::uint32_t, std::uint32_t> to_tracked;
  std::unordered_map<std::uint32_t, count> fresh_size;
  for (node v = 0; v < g.num_nodes(); ++v) ++fresh_size[fresh[v]];
  for (node v = 0; v < g.num_nodes(); ++v) {
    const auto t = tracker.label(v);
    const auto [it1, new1] = to_fresh.try_emplace(t, fresh[v]);
    const auto [it2, new2] = to_tracked.try_emplace(fresh[v], t);
    if (it1->second != fresh[v] || it2->second != t) {
      std::ostringstream why;
      why << "node " << v << ": tracker component disagrees with fresh labeling";
      return why.str();
    }
    if (tracker.component_size(v) != fresh_size[fresh[v]]) {
      std::ostringstream why;
      why << "node " << v << ": component size " << tracker.component_size(v) << ", expected "
          << fresh_size[fresh[v]];
      return why.str();
    }
  }
  return std::nullopt;
}

/// Full consistency check of an engine against brute force.
inline std::optional<std::string> check_engine(const DynamicTopK& engine) {
  const auto truth = oracle::oracle_all(engine.graph());
  if (auto e = check_topk(engine.topk(), truth, engine.k())) return "top-k: " + *e;
  if (auto e = check_bounds(engine.state(), truth)) return "bounds: " + *e;
  if (auto e = check_components(engine.tracker(), engine.graph())) return "components: " + *e;
  return std::nullopt;
}

}  // namespace dyntopk
