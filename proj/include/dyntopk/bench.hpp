#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "dyntopk/dynamic_topk.hpp"
#include "dyntopk/static_topk.hpp"
#include "dyntopk/verify.hpp"

namespace dyntopk::bench {

enum class Operation { Insert, Delete, Mixed };

inline const char* to_string(Operation op) {
  switch (op) {
    case Operation::Insert: return "insert";
    case Operation::Delete: return "delete";
    case Operation::Mixed: return "mixed";
  }
  return "?";
}

struct BenchConfig {
  std::string graph_path;
  bool directed = false;
  Variant variant = Variant::NBCut;
  Operation op = Operation::Insert;
  count k = 10;
  count num_updates = 100;
  count static_every = 10;
  std::uint64_t seed = 1;
  std::string out_path;
};

struct EdgeUpdate {
  bool insert;
  node u;
  node v;
};

struct BenchRecord {
  count index = 0;
  EdgeUpdate update{};
  std::optional<double> static_us;
  double dynamic_us = 0.0;
  std::optional<double> speedup;
  UpdateStats stats;
  double top1_value = 0.0;
  /// Dynamic and static top-k disagreed (only checked on sampled updates).
  bool static_mismatch = false;
};

struct BenchSummary {
  std::optional<double> gmean_speedup;
  std::optional<double> min_speedup;
  std::optional<double> max_speedup;
  double pct_affected = 0.0;
  double pct_faraway = 0.0;
  double pct_boundary = 0.0;
  double pct_distbound = 0.0;
  double pct_bfscuts = 0.0;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  BenchSummary summary;
};

/// Uniform integer in [0, bound) from the raw 64-bit stream. Independent of
/// the standard library's distribution implementations, so a seed yields the
/// same sequence everywhere.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Current edge set with O(1) uniform sampling and removal.
class EdgePool {
public:
  explicit EdgePool(const Graph& g) : directed_(g.directed()) {
    for (auto e : g.edges()) add(e.first, e.second);
  }

  count size() const noexcept { return edges_.size(); }
  std::pair<node, node> at(count i) const { return edges_[i]; }

  void add(node u, node v) {
    index_[key(u, v)] = edges_.size();
    edges_.emplace_back(u, v);
  }

  void remove(node u, node v) {
    const auto it = index_.find(key(u, v));
    const count i = it->second;
    index_.erase(it);
    if (i + 1 != edges_.size()) {
      edges_[i] = edges_.back();
      index_[key(edges_[i].first, edges_[i].second)] = i;
    }
    edges_.pop_back();
  }

private:
  std::uint64_t key(node u, node v) const {
    if (!directed_ && u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  bool directed_;
  std::vector<std::pair<node, node>> edges_;
  std::unordered_map<std::uint64_t, count> index_;
};

/// Produces the seeded update sequence. For insertion runs this also removes
/// the edges to be reinserted from `g`.
class UpdateSource {
public:
  UpdateSource(Graph& g, Operation op, count num_updates, std::uint64_t seed)
      : op_(op), rng_(seed), pool_(g) {
    if (op_ != Operation::Mixed && pool_.size() < num_updates)
      throw std::invalid_argument("graph has " + std::to_string(pool_.size()) + " edges, fewer than the " +
                                  std::to_string(num_updates) + " updates requested");
    if (op_ == Operation::Insert) {
      // Sample without replacement, then take them out of the starting graph.
      for (count i = 0; i < num_updates; ++i) {
        const count j = static_cast<count>(uniform_index(rng_, pool_.size()));
        const auto [u, v] = pool_.at(j);
        pool_.remove(u, v);
        g.delete_edge(u, v);
        pending_.push_back({true, u, v});
      }
      std::reverse(pending_.begin(), pending_.end());
    }
  }

  /// Next update against the current graph `g`.
  EdgeUpdate next(const Graph& g) {
    if (op_ == Operation::Insert) {
      const EdgeUpdate up = pending_.back();
      pending_.pop_back();
      pool_.add(up.u, up.v);
      return up;
    }
    bool insert = false;
    if (op_ == Operation::Mixed) insert = (rng_() & 1U) != 0 || pool_.size() == 0;
    if (insert) {
      const count n = g.num_nodes();
      const count max_edges = g.directed() ? n * (n - 1) : n * (n - 1) / 2;
      if (n >= 2 && g.num_edges() < max_edges) {
        while (true) {
          const node u = static_cast<node>(uniform_index(rng_, n));
          const node v = static_cast<node>(uniform_index(rng_, n));
          if (u == v || g.has_edge(u, v)) continue;
          pool_.add(u, v);
          return {true, u, v};
        }
      }
    }
    if (pool_.size() == 0) throw std::runtime_error("no edge left to delete");
    const auto [u, v] = pool_.at(static_cast<count>(uniform_index(rng_, pool_.size())));
    pool_.remove(u, v);
    return {false, u, v};
  }

private:
  Operation op_;
  std::mt19937_64 rng_;
  EdgePool pool_;
  std::vector<EdgeUpdate> pending_;
};

inline StaticResult run_static(const Graph& g, count k, Variant variant) {
  return variant == Variant::NBCut ? nbcut_topk(g, k) : nbbound_topk(g, k);
}

namespace detail {

inline double micros_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
}

inline bool same_list(const TopKList& a, const TopKList& b) {
  if (a.size() != b.size()) return false;
  for (count i = 0; i < a.size(); ++i)
    if (std::abs(a[i].value - b[i].value) > kTolerance) return false;
  return true;
}

}  // namespace detail

inline BenchSummary summarize(const std::vector<BenchRecord>& records, count num_nodes) {
  BenchSummary s;
  double log_sum = 0.0;
  count samples = 0;
  double affected_frac = 0.0;
  double ins_affected = 0.0, faraway = 0.0, boundary = 0.0, distbound = 0.0;
  double all_affected = 0.0, bfscuts = 0.0;
  for (const auto& r : records) {
    if (r.speedup) {
      log_sum += std::log(*r.speedup);
      ++samples;
      s.min_speedup = s.min_speedup ? std::min(*s.min_speedup, *r.speedup) : *r.speedup;
      s.max_speedup = s.max_speedup ? std::max(*s.max_speedup, *r.speedup) : *r.speedup;
    }
    const auto a = static_cast<double>(r.stats.affected_count);
    if (num_nodes > 0) affected_frac += a / static_cast<double>(num_nodes);
    all_affected += a;
    bfscuts += static_cast<double>(r.stats.bfscut_count);
    if (r.update.insert) {
      ins_affected += a;
      faraway += static_cast<double>(r.stats.faraway_count);
      boundary += static_cast<double>(r.stats.boundary_count);
      distbound += static_cast<double>(r.stats.distbound_count);
    }
  }
  if (samples > 0) s.gmean_speedup = std::exp(log_sum / static_cast<double>(samples));
  if (!records.empty()) s.pct_affected = 100.0 * affected_frac / static_cast<double>(records.size());
  if (ins_affected > 0) {
    s.pct_faraway = 100.0 * faraway / ins_affected;
    s.pct_boundary = 100.0 * boundary / ins_affected;
    s.pct_distbound = 100.0 * distbound / ins_affected;
  }
  if (all_affected > 0) s.pct_bfscuts = 100.0 * bfscuts / all_affected;
  return s;
}

/// Replays the seeded update sequence on `g`, timing each dynamic update and,
/// every `static_every` updates, a from-scratch static run on the same graph.
inline BenchReport run_benchmark(const BenchConfig& cfg, Graph g) {
  if (cfg.num_updates < 1) throw std::invalid_argument("--updates must be at least 1");
  if (cfg.static_every < 1) throw std::invalid_argument("--static-every must be at least 1");
  if (cfg.k < 1) throw std::invalid_argument("--k must be at least 1");
  UpdateSource source(g, cfg.op, cfg.num_updates, cfg.seed);
  DynamicTopK engine(std::move(g), cfg.k, cfg.variant);
  BenchReport report;
  report.records.reserve(cfg.num_updates);
  for (count i = 0; i < cfg.num_updates; ++i) {
    BenchRecord rec;
    rec.index = i;
    rec.update = source.next(engine.graph());
    const auto start = std::chrono::steady_clock::now();
    rec.stats = rec.update.insert ? engine.insert_edge(rec.update.u, rec.update.v)
                                  : engine.delete_edge(rec.update.u, rec.update.v);
    rec.dynamic_us = detail::micros_since(start);
    if (i % cfg.static_every == 0) {
      const auto s_start = std::chrono::steady_clock::now();
      const StaticResult fresh = run_static(engine.graph(), cfg.k, cfg.variant);
      rec.static_us = detail::micros_since(s_start);
      if (rec.dynamic_us > 0) rec.speedup = *rec.static_us / rec.dynamic_us;
      rec.static_mismatch = !detail::same_list(fresh.topk, engine.topk());
    }
    rec.top1_value = engine.topk().empty() ? 0.0 : engine.topk()[0].value;
    report.records.push_back(rec);
  }
  report.summary = summarize(report.records, engine.graph().num_nodes());
  return report;
}

inline constexpr const char* kCsvHeader =
    "update,op,u,v,static_us,dynamic_us,speedup,affected,faraway,boundary,distbound,bfscuts,top1_value";

inline std::string format_fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.index << ',' << (r.update.insert ? "insert" : "delete") << ',' << r.update.u << ',' << r.update.v << ','
        << (r.static_us ? format_fixed(*r.static_us, 3) : "") << ',' << format_fixed(r.dynamic_us, 3) << ','
        << (r.speedup ? format_fixed(*r.speedup, 3) : "") << ',' << r.stats.affected_count << ','
        << r.stats.faraway_count << ',' << r.stats.boundary_count << ',' << r.stats.distbound_count << ','
        << r.stats.bfscut_count << ',' << format_fixed(r.top1_value, 9) << '\n';
  }
}

inline nlohmann::ordered_json summary_json(const BenchSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json j;
  j["gmean_speedup"] = opt(s.gmean_speedup);
  j["min_speedup"] = opt(s.min_speedup);
  j["max_speedup"] = opt(s.max_speedup);
  j["pct_affected"] = s.pct_affected;
  j["pct_faraway"] = s.pct_faraway;
  j["pct_boundary"] = s.pct_boundary;
  j["pct_distbound"] = s.pct_distbound;
  j["pct_bfscuts"] = s.pct_bfscuts;
  return j;
}

struct VerifyReport {
  bool passed = true;
  count updates_checked = 0;
  std::string message;
};

/// Called after each update with the engine and the update index; lets tests
/// corrupt state to exercise the failure path.
using FaultHook = std::function<void(DynamicTopK&, count)>;

/// Replays the same update sequence as run_benchmark and checks the engine
/// against brute force after construction and after every update.
inline VerifyReport verify_run(const BenchConfig& cfg, Graph g, const FaultHook& hook = {}) {
  if (cfg.k < 1) throw std::invalid_argument("--k must be at least 1");
  VerifyReport report;
  UpdateSource source(g, cfg.op, cfg.num_updates, cfg.seed);
  DynamicTopK engine(std::move(g), cfg.k, cfg.variant);
  if (auto e = check_engine(engine)) {
    report.passed = false;
    report.message = "initial state: " + *e;
    return report;
  }
  for (count i = 0; i < cfg.num_updates; ++i) {
    const EdgeUpdate up = source.next(engine.graph());
    if (up.insert)
      engine.insert_edge(up.u, up.v);
    else
      engine.delete_edge(up.u, up.v);
    if (hook) hook(engine, i);
    ++report.updates_checked;
    if (auto e = check_engine(engine)) {
      report.passed = false;
      report.message = "update " + std::to_string(i) + " (" + (up.insert ? "insert " : "delete ") +
                       std::to_string(up.u) + "," + std::to_string(up.v) + "): " + *e;
      return report;
    }
  }
  report.message = "ok";
  return report;
}

}  // namespace dyntopk::bench
