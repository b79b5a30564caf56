#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "ultra/graph/static_graph.hpp"

namespace ultra {

// Shortcut edges between stops, sorted by (from, to), one edge per pair.
class ShortcutGraph {
 public:
  ShortcutGraph() = default;
  ShortcutGraph(std::size_t stop_count, std::vector<Edge> edges) : stop_count_(stop_count) {
    for (const Edge& e : edges) {
      if (e.from >= stop_count || e.to >= stop_count) throw ContractViolation("shortcut endpoint is not a stop");
      if (e.weight < 0) throw ContractViolation("negative shortcut time");
    }
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges) {
      if (!edges_.empty() && edges_.back().from == e.from && edges_.back().to == e.to) continue;
      edges_.push_back(e);
    }
    graph_ = StaticGraph(stop_count_, edges_);
  }

  std::size_t stop_count() const noexcept { return stop_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const StaticGraph& graph() const noexcept { return graph_; }
  std::span<const Arc> out(StopId s) const noexcept { return graph_.out(s); }

  // Time of the shortcut u->v, kInfinity if absent.
  Time time(StopId u, StopId v) const noexcept {
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, std::numeric_limits<Time>::min()});
    return it != edges_.end() && it->from == u && it->to == v ? it->weight : kInfinity;
  }

  friend bool operator==(const ShortcutGraph& a, const ShortcutGraph& b) {
    return a.stop_count_ == b.stop_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t stop_count_ = 0;
  std::vector<Edge> edges_;
  StaticGraph graph_;
};

// Union of the edge sets keeping the minimum time per stop pair.
inline ShortcutGraph merge_worker_shortcuts(std::span<const ShortcutGraph> sets) {
  std::size_t stops = 0;
  std::vector<Edge> all;
  for (const ShortcutGraph& s : sets) {
    stops = std::max(stops, s.stop_count());
    all.insert(all.end(), s.edges().begin(), s.edges().end());
  }
  return ShortcutGraph(stops, std::move(all));
}

}  // namespace ultra
