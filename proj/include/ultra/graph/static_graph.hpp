#pragma once

#include <algorithm>
#include <span>
#include <tuple>
#include <vector>

#include "ultra/types.hpp"

namespace ultra {

struct Arc {
  Vertex head;
  Time weight;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Edge {
  Vertex from;
  Vertex to;
  Time weight;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Compressed adjacency (CSR) of a directed graph. Immutable once built.
class StaticGraph {
 public:
  StaticGraph() : offsets_(1, 0) {}

  // Builds from an edge list. Arcs of a vertex keep the input order of the
  // edges after a stable sort by tail.
  StaticGraph(std::size_t vertex_count, std::span<const Edge> edges) : offsets_(vertex_count + 1, 0) {
    for (const Edge& e : edges) {
      if (e.from >= vertex_count || e.to >= vertex_count) {
        throw ContractViolation("edge endpoint out of range");
      }
      ++offsets_[e.from + 1];
    }
    for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] += offsets_[v];
    arcs_.resize(edges.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) arcs_[fill[e.from]++] = Arc{e.to, e.weight};
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return arcs_.size(); }

  std::span<const Arc> out(Vertex v) const noexcept {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  std::size_t out_degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(arcs_.size());
    for (Vertex v = 0; v < vertex_count(); ++v) {
      for (const Arc& a : out(v)) result.push_back({v, a.head, a.weight});
    }
    return result;
  }

  StaticGraph reversed() const {
    std::vector<Edge> rev;
    rev.reserve(arcs_.size());
    for (Vertex v = 0; v < vertex_count(); ++v) {
      for (const Arc& a : out(v)) rev.push_back({a.head, v, a.weight});
    }
    return StaticGraph(vertex_count(), rev);
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
};

// Collapses parallel edges to their minimum weight and drops self-loops.
inline std::vector<Edge> simplify_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to, a.weight) < std::tie(b.from, b.to, b.weight);
  });
  std::vector<Edge> result;
  result.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.from == e.to) continue;
    if (!result.empty() && result.back().from == e.from && result.back().to == e.to) continue;
    result.push_back(e);
  }
  return result;
}

}  // namespace ultra
