#pragma once

#include "ultra/ch/contraction.hpp"
#include "ultra/graph/dijkstra.hpp"

namespace ultra::detail {

// Upward searches from s and t in the partial hierarchy of a core graph.
// Together with the core they cover every s-t path: forward(c) and backward(c)
// are exact for core vertices entered or left first.
class UpwardSearches {
 public:
  explicit UpwardSearches(const CoreGraph& core)
      : forward_(core.hierarchy.up_out), backward_(core.hierarchy.up_in) {}

  // Returns the best s-t distance that avoids core-to-core edges.
  Time run(Vertex s, Vertex t) {
    forward_.run(s);
    backward_.run(t);
    Time direct = kInfinity;
    for (const Vertex v : forward_.settled_order()) {
      direct = std::min(direct, add_time(forward_.distance(v), backward_.distance(v)));
    }
    return direct;
  }

  std::span<const Vertex> forward_space() const noexcept { return forward_.settled_order(); }
  Time forward(Vertex v) const noexcept { return forward_.distance(v); }
  Time backward(Vertex v) const noexcept { return backward_.distance(v); }

 private:
  DijkstraSearch<StaticGraph> forward_;
  DijkstraSearch<StaticGraph> backward_;
};

}  // namespace ultra::detail
