#pragma once

#include <algorithm>
#include <vector>

#include "ultra/ch/contraction.hpp"
#include "ultra/graph/static_graph.hpp"
#include "ultra/transit/network.hpp"

namespace ultra {

// Core vertices joined by zero-length paths in both directions, merged into
// one proxy vertex each. Proxies are numbered by their smallest member, so
// the numbering only depends on the core graph.
struct ZeroGroups {
  std::vector<Vertex> proxy;                      // core vertex -> proxy, kNoVertex off the core
  std::vector<std::vector<StopId>> stops_of;      // proxy -> member stops, ascending
  StaticGraph merged;                             // core graph on proxies, parallel edges at their minimum

  std::size_t proxy_count() const noexcept { return stops_of.size(); }
};

namespace detail {

// Strongly connected components of the subgraph of zero-weight arcs, by an
// iterative Tarjan search. Returns a component id per vertex in `members`.
inline std::vector<std::uint32_t> zero_components(const StaticGraph& g, const std::vector<Vertex>& members) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;  // vertex, next arc
  std::uint32_t next_index = 0, next_component = 0;
  for (const Vertex root : members) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, arc] = call.back();
      const auto arcs = g.out(v);
      if (arc < arcs.size()) {
        const Arc a = arcs[arc++];
        if (a.weight != 0) continue;
        if (index[a.head] == kUnvisited) {
          index[a.head] = low[a.head] = next_index++;
          stack.push_back(a.head);
          on_stack[a.head] = true;
          call.push_back({a.head, 0});
        } else if (on_stack[a.head]) {
          low[v] = std::min(low[v], index[a.head]);
        }
        continue;
      }
      const Vertex done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = next_component;
        } while (w != done);
        ++next_component;
      }
    }
  }
  return component;
}

}  // namespace detail

inline ZeroGroups zero_groups(const Network& net, const CoreGraph& core) {
  for (StopId s = 0; s < net.stop_count(); ++s) {
    if (!core.in_core(s)) throw ContractViolation("stop " + std::to_string(s) + " is missing from the core");
  }
  const auto component = detail::zero_components(core.core, core.core_vertices);

  // Renumber by smallest member; core_vertices is ascending.
  std::vector<std::uint32_t> renumber(core.core_vertices.size(), kNoVertex);
  ZeroGroups groups;
  groups.proxy.assign(core.vertex_count(), kNoVertex);
  std::uint32_t next = 0;
  for (const Vertex v : core.core_vertices) {
    if (renumber[component[v]] == kNoVertex) renumber[component[v]] = next++;
    groups.proxy[v] = renumber[component[v]];
  }
  groups.stops_of.resize(next);
  for (StopId s = 0; s < net.stop_count(); ++s) groups.stops_of[groups.proxy[s]].push_back(s);

  std::vector<Edge> edges;
  for (const Vertex v : core.core_vertices) {
    for (const Arc& a : core.core.out(v)) {
      const Vertex p = groups.proxy[v], q = groups.proxy[a.head];
      if (p != q) edges.push_back({p, q, a.weight});
    }
  }
  groups.merged = StaticGraph(next, simplify_edges(std::move(edges)));
  return groups;
}

// Partition of the stops into zero groups, each group ascending, groups
// ordered by their first stop. Singletons included.
inline std::vector<std::vector<StopId>> stop_partition(const ZeroGroups& groups) {
  std::vector<std::vector<StopId>> result;
  for (const auto& members : groups.stops_of) {
    if (!members.empty()) result.push_back(members);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace ultra
