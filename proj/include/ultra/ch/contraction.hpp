#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "ultra/graph/indexed_heap.hpp"
#include "ultra/graph/static_graph.hpp"
#include "ultra/types.hpp"

namespace ultra {

inline constexpr std::uint32_t kCoreRank = std::numeric_limits<std::uint32_t>::max();

// Vertices are ranked by contraction order; uncontracted vertices carry
// kCoreRank and sit above everything else.
//   up_out: arc v->w of weight d for every overlay edge v->w with rank[w] > rank[v]
//   up_in:  arc v->u of weight d for every overlay edge u->v with rank[u] > rank[v]
// Upward searches from s over up_out and from t over up_in meet on a shortest
// s-t path whenever both endpoints were contracted or the path avoids the core.
struct ContractionHierarchy {
  std::vector<std::uint32_t> rank;
  StaticGraph up_out;
  StaticGraph up_in;
  std::size_t shortcut_count = 0;

  std::size_t vertex_count() const noexcept { return rank.size(); }
  bool contracted(Vertex v) const noexcept { return rank[v] != kCoreRank; }
};

// Partial hierarchy plus the overlay graph on the uncontracted vertices. The
// core graph uses original vertex ids; non-core vertices have no arcs in it.
struct CoreGraph {
  ContractionHierarchy hierarchy;
  std::vector<Vertex> core_vertices;
  StaticGraph core;
  StaticGraph core_reversed;

  bool in_core(Vertex v) const noexcept { return !hierarchy.contracted(v); }
  std::size_t vertex_count() const noexcept { return hierarchy.vertex_count(); }
};

struct ContractionParams {
  // Settled vertices a witness search may spend before giving up. Giving up
  // only adds shortcuts, so distances stay exact.
  std::size_t witness_budget = 500;
};

namespace detail {

class Contractor {
 public:
  Contractor(std::size_t n, std::span<const Edge> edges, ContractionParams params)
      : params_(params),
        out_(n),
        in_(n),
        rank_(n, kCoreRank),
        contracted_neighbours_(n, 0),
        heap_(n),
        distance_(n, kInfinity),
        settled_(n, 0) {
    for (const Edge& e : edges) {
      if (e.from >= n || e.to >= n) throw ContractViolation("edge endpoint out of range");
      if (e.weight < 0) throw ContractViolation("negative edge weight");
      add_edge(e.from, e.to, e.weight);
    }
  }

  // Contracts vertices with contractible[v] set, cheapest first, until none
  // is left or stop_now() is true before the next contraction.
  template <typename StopNow>
  void run(const std::vector<bool>& contractible, StopNow stop_now) {
    const std::size_t n = out_.size();
    IndexedHeap queue(n);
    for (Vertex v = 0; v < n; ++v) {
      if (contractible[v]) queue.push_or_decrease(v, priority(v));
    }
    while (!queue.empty()) {
      if (stop_now(*this)) break;
      const Vertex v = queue.pop();
      const Time p = priority(v);
      if (!queue.empty() && std::make_pair(p, v) > std::make_pair(queue.min_key(), queue.top())) {
        queue.push_or_decrease(v, p);
        continue;
      }
      contract(v);
    }
  }

  std::size_t remaining_vertices() const noexcept { return out_.size() - next_rank_; }
  std::size_t remaining_edges() const noexcept { return edge_count_; }

  ContractionHierarchy hierarchy() const {
    ContractionHierarchy ch;
    ch.rank = rank_;
    ch.up_out = StaticGraph(out_.size(), up_out_);
    ch.up_in = StaticGraph(out_.size(), up_in_);
    ch.shortcut_count = shortcut_count_;
    return ch;
  }

  std::vector<Edge> remaining_edge_list() const {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < out_.size(); ++v) {
      if (rank_[v] != kCoreRank) continue;
      for (const Arc& a : out_[v]) edges.push_back({v, a.head, a.weight});
    }
    return edges;
  }

 private:
  void add_edge(Vertex u, Vertex w, Time weight) {
    if (u == w) return;
    for (Arc& a : out_[u]) {
      if (a.head != w) continue;
      if (weight < a.weight) {
        a.weight = weight;
        for (Arc& b : in_[w]) {
          if (b.head == u) b.weight = weight;
        }
      }
      return;
    }
    out_[u].push_back({w, weight});
    in_[w].push_back({u, weight});
    ++edge_count_;
  }

  // Bounded search from u avoiding `skip`. Unsettled tentative distances are
  // still lengths of real paths, so they count as witnesses too.
  void witness_search(Vertex u, Vertex skip, Time limit) {
    distance_.reset();
    settled_.reset();
    heap_.clear();
    distance_.set(u, 0);
    heap_.push_or_decrease(u, 0);
    std::size_t settled = 0;
    while (!heap_.empty() && heap_.min_key() <= limit && settled < params_.witness_budget) {
      const Time du = heap_.min_key();
      const Vertex x = heap_.pop();
      settled_.set(x, 1);
      ++settled;
      for (const Arc& a : out_[x]) {
        if (a.head == skip) continue;
        const Time d = add_time(du, a.weight);
        if (d < distance_[a.head]) {
          distance_.set(a.head, d);
          heap_.push_or_decrease(a.head, d);
        }
      }
    }
  }

  // Visits every shortcut contracting v would need.
  template <typename Emit>
  void shortcuts_of(Vertex v, Emit emit) {
    Time max_out = 0;
    for (const Arc& a : out_[v]) max_out = std::max(max_out, a.weight);
    for (const Arc& in : in_[v]) {
      const Vertex u = in.head;
      bool needed = false;
      for (const Arc& out : out_[v]) needed |= out.head != u;
      if (!needed) continue;
      witness_search(u, v, add_time(in.weight, max_out));
      for (const Arc& out : out_[v]) {
        if (out.head == u) continue;
        const Time via = add_time(in.weight, out.weight);
        if (distance_[out.head] <= via) continue;
        emit(u, out.head, via);
      }
    }
  }

  Time priority(Vertex v) {
    Time shortcuts = 0;
    shortcuts_of(v, [&](Vertex, Vertex, Time) { ++shortcuts; });
    const Time degree = static_cast<Time>(in_[v].size() + out_[v].size());
    return shortcuts - degree + contracted_neighbours_[v];
  }

  void contract(Vertex v) {
    std::vector<Edge> added;
    shortcuts_of(v, [&](Vertex u, Vertex w, Time d) { added.push_back({u, w, d}); });
    for (const Arc& a : out_[v]) {
      up_out_.push_back({v, a.head, a.weight});
      erase_arc(in_[a.head], v);
      ++contracted_neighbours_[a.head];
    }
    for (const Arc& a : in_[v]) {
      up_in_.push_back({v, a.head, a.weight});
      erase_arc(out_[a.head], v);
      ++contracted_neighbours_[a.head];
    }
    edge_count_ -= out_[v].size() + in_[v].size();
    out_[v].clear();
    in_[v].clear();
    rank_[v] = next_rank_++;
    for (const Edge& e : added) {
      const std::size_t before = edge_count_;
      add_edge(e.from, e.to, e.weight);
      shortcut_count_ += edge_count_ - before;
    }
  }

  static void erase_arc(std::vector<Arc>& arcs, Vertex head) {
    arcs.erase(std::remove_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.head == head; }), arcs.end());
  }

  ContractionParams params_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;  // heads are tails of the original edges
  std::vector<std::uint32_t> rank_;
  std::vector<Time> contracted_neighbours_;
  std::vector<Edge> up_out_;
  std::vector<Edge> up_in_;
  std::size_t edge_count_ = 0;
  std::size_t shortcut_count_ = 0;
  std::uint32_t next_rank_ = 0;
  IndexedHeap heap_;
  StampedArray<Time> distance_;
  StampedArray<std::uint8_t> settled_;
};

}  // namespace detail

inline ContractionHierarchy contract_full(std::size_t vertex_count, std::span<const Edge> edges,
                                          ContractionParams params = {}) {
  detail::Contractor contractor(vertex_count, edges, params);
  contractor.run(std::vector<bool>(vertex_count, true), [](const auto&) { return false; });
  return contractor.hierarchy();
}

// Contracts vertices outside `keep` until only kept vertices remain or the
// average degree of the remaining graph (edges per vertex) exceeds the bound.
inline CoreGraph contract_core(std::size_t vertex_count, std::span<const Edge> edges, const std::vector<bool>& keep,
                               double max_avg_degree, ContractionParams params = {}) {
  if (keep.size() != vertex_count) throw ContractViolation("keep mask does not match the vertex count");
  detail::Contractor contractor(vertex_count, edges, params);
  std::vector<bool> contractible(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) contractible[v] = !keep[v];
  contractor.run(contractible, [&](const detail::Contractor& c) {
    const double vertices = static_cast<double>(c.remaining_vertices());
    return vertices > 0 && static_cast<double>(c.remaining_edges()) / vertices > max_avg_degree;
  });
  CoreGraph core;
  core.hierarchy = contractor.hierarchy();
  const auto core_edges = contractor.remaining_edge_list();
  core.core = StaticGraph(vertex_count, core_edges);
  core.core_reversed = core.core.reversed();
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (core.in_core(v)) core.core_vertices.push_back(v);
  }
  return core;
}

}  // namespace ultra
