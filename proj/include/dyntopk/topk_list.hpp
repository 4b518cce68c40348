#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dyntopk/graph.hpp"

namespace dyntopk {

/// Absolute tolerance for comparing closeness values.
inline constexpr double kTolerance = 1e-9;

struct TopKEntry {
  node id = kNoNode;
  double value = 0.0;

  friend bool operator==(const TopKEntry&, const TopKEntry&) = default;
};

/// True if `a` ranks strictly before `b`: higher closeness first, and among
/// values equal within kTolerance the smaller node id first.
inline bool ranks_before(const TopKEntry& a, const TopKEntry& b) {
  if (std::abs(a.value - b.value) > kTolerance) return a.value > b.value;
  return a.id < b.id;
}

/// At most k (node, exact closeness) pairs in rank order.
class TopKList {
public:
  explicit TopKList(count k = 1) : k_(k) { entries_.reserve(k + 1); }

  count capacity() const noexcept { return k_; }
  count size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool full() const noexcept { return entries_.size() >= k_; }

  /// k-th best closeness when full, else 0.
  double xk() const noexcept { return full() ? entries_.back().value : 0.0; }

  std::span<const TopKEntry> entries() const noexcept { return entries_; }
  const TopKEntry& operator[](count i) const { return entries_[i]; }

  bool contains(node id) const {
    return std::any_of(entries_.begin(), entries_.end(), [id](const TopKEntry& e) { return e.id == id; });
  }

  /// Whether inserting (id, value) would keep it in the list.
  bool admits(node id, double value) const {
    return !full() || ranks_before(TopKEntry{id, value}, entries_.back());
  }

  /// Inserts if admitted, dropping the lowest entry on overflow. Returns true if inserted.
  bool insert(node id, double value) {
    if (!admits(id, value)) return false;
    const TopKEntry entry{id, value};
    auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry,
                                [](const TopKEntry& a, const TopKEntry& b) { return ranks_before(a, b); });
    entries_.insert(pos, entry);
    if (entries_.size() > k_) entries_.pop_back();
    return true;
  }

  bool remove(node id) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [id](const TopKEntry& e) { return e.id == id; });
    if (it == entries_.end()) return false;
    entries_.erase(it);
    return true;
  }

  std::vector<node> nodes() const {
    std::vector<node> ids;
    ids.reserve(entries_.size());
    for (const auto& e : entries_) ids.push_back(e.id);
    return ids;
  }

private:
  count k_;
  std::vector<TopKEntry> entries_;
};

}  // namespace dyntopk
