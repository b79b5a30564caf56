#pragma once

#include <span>
#include <vector>

#include "ultra/graph/indexed_heap.hpp"
#include "ultra/graph/static_graph.hpp"
#include "ultra/types.hpp"

namespace ultra {

struct SearchSource {
  Vertex vertex;
  Time offset = 0;
};

// Result of a (possibly truncated) Dijkstra run. Unsettled vertices carry
// kInfinity or a tentative upper bound; `settled` tells which is which.
struct DistanceMap {
  std::vector<Time> distance;
  std::vector<Vertex> parent;
  std::vector<bool> settled;
};

struct NeverStop {
  constexpr bool operator()(Time /*head_key*/, Vertex /*head*/) const noexcept { return false; }
};

// Reusable one-to-all search. Arrays are generation-stamped, so repeated runs
// only pay for the vertices they touch.
template <typename Graph>
class DijkstraSearch {
 public:
  explicit DijkstraSearch(const Graph& graph)
      : graph_(&graph),
        heap_(graph.vertex_count()),
        distance_(graph.vertex_count(), kInfinity),
        parent_(graph.vertex_count(), kNoVertex),
        settled_(graph.vertex_count(), 0) {}

  // `stop(head_key, head)` is asked before each vertex is settled; returning
  // true ends the search with that vertex unsettled.
  template <typename StopCriterion = NeverStop>
  void run(std::span<const SearchSource> sources, StopCriterion stop = {}) {
    distance_.reset();
    parent_.reset();
    settled_.reset();
    heap_.clear();
    order_.clear();
    for (const SearchSource& s : sources) {
      if (s.offset < 0) throw ContractViolation("negative source offset");
      if (s.offset < distance_[s.vertex]) {
        distance_.set(s.vertex, s.offset);
        heap_.push_or_decrease(s.vertex, s.offset);
      }
    }
    while (!heap_.empty()) {
      const Vertex u = heap_.top();
      const Time du = heap_.min_key();
      if (stop(du, u)) break;
      heap_.pop();
      settled_.set(u, 1);
      order_.push_back(u);
      for (const Arc& a : graph_->out(u)) {
        const Time dv = add_time(du, a.weight);
        if (dv < distance_[a.head]) {
          distance_.set(a.head, dv);
          parent_.set(a.head, u);
          heap_.push_or_decrease(a.head, dv);
        }
      }
    }
  }

  void run(Vertex source) {
    const SearchSource s{source, 0};
    run(std::span<const SearchSource>(&s, 1));
  }

  Time distance(Vertex v) const noexcept { return distance_[v]; }
  Vertex parent(Vertex v) const noexcept { return parent_[v]; }
  bool settled(Vertex v) const noexcept { return settled_[v] != 0; }
  std::span<const Vertex> settled_order() const noexcept { return order_; }

  DistanceMap to_map() const {
    const std::size_t n = graph_->vertex_count();
    DistanceMap m{std::vector<Time>(n), std::vector<Vertex>(n), std::vector<bool>(n)};
    for (std::size_t v = 0; v < n; ++v) {
      m.distance[v] = distance_[v];
      m.parent[v] = parent_[v];
      m.settled[v] = settled_[v] != 0;
    }
    return m;
  }

 private:
  const Graph* graph_;
  IndexedHeap heap_;
  StampedArray<Time> distance_;
  StampedArray<Vertex> parent_;
  StampedArray<std::uint8_t> settled_;
  std::vector<Vertex> order_;
};

template <typename Graph, typename StopCriterion = NeverStop>
DistanceMap dijkstra(const Graph& graph, std::span<const SearchSource> sources, StopCriterion stop = {}) {
  DijkstraSearch<Graph> search(graph);
  search.run(sources, stop);
  return search.to_map();
}

template <typename Graph>
DistanceMap dijkstra(const Graph& graph, Vertex source) {
  const SearchSource s{source, 0};
  return dijkstra(graph, std::span<const SearchSource>(&s, 1));
}

}  // namespace ultra
