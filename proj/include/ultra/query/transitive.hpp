#pragma once

#include <utility>
#include <vector>

#include "ultra/graph/dijkstra.hpp"
#include "ultra/query/shortcut_raptor.hpp"

namespace ultra {

// Same timetable with the transfer graph replaced by one edge per pair of
// stops at shortest-path distance. Non-stop vertices are dropped.
inline Network make_transitive(const Network& net) {
  std::vector<Edge> edges;
  DijkstraSearch search(net.graph().forward());
  for (StopId s = 0; s < net.stop_count(); ++s) {
    search.run(s);
    for (const Vertex v : search.settled_order()) {
      if (v != s && net.is_stop(v)) edges.push_back({s, v, search.distance(v)});
    }
  }
  std::sort(edges.begin(), edges.end());
  return Network::create({net.stops().begin(), net.stops().end()}, {net.trips().begin(), net.trips().end()},
                         TransferGraph(net.stop_count(), std::move(edges)), net.horizon());
}

namespace detail {

// Stop-to-stop edges of a network that is expected to be closed already.
class StopTransfers {
 public:
  explicit StopTransfers(const Network& net) : to_target_(net.stop_count(), kInfinity) {
    std::vector<Edge> edges;
    for (const Edge& e : net.graph().edges()) {
      if (net.is_stop(e.from) && net.is_stop(e.to) && e.from != e.to) edges.push_back(e);
    }
    graph_ = StaticGraph(net.stop_count(), simplify_edges(std::move(edges)));
    reversed_ = graph_.reversed();
  }

  const StaticGraph& graph() const noexcept { return graph_; }

  // Fills the endpoint data of a stop-to-stop query.
  Time prepare(StopId s, StopId t) {
    initial_.assign(1, {s, 0});
    Time direct = s == t ? 0 : kInfinity;
    for (const Arc& a : graph_.out(s)) {
      initial_.push_back({a.head, a.weight});
      if (a.head == t) direct = std::min(direct, a.weight);
    }
    to_target_.reset();
    to_target_.set(t, 0);
    for (const Arc& a : reversed_.out(t)) to_target_.set(a.head, std::min(to_target_[a.head], a.weight));
    return direct;
  }

  std::span<const std::pair<Vertex, Time>> initial() const noexcept { return initial_; }
  Time to_target(StopId v) const noexcept { return to_target_[v]; }

 private:
  StaticGraph graph_;
  StaticGraph reversed_;
  std::vector<std::pair<Vertex, Time>> initial_;
  StampedArray<Time> to_target_;
};

inline void require_stops(const Network& net, Vertex s, Vertex t) {
  if (!net.is_stop(s) || !net.is_stop(t)) throw ContractViolation("stop-to-stop engine queried with a non-stop vertex");
}

}  // namespace detail

// RAPTOR on a network whose transfer graph is transitively closed over stops.
class TransitiveRaptor {
 public:
  explicit TransitiveRaptor(const Network& net) : net_(&net), transfers_(net) { state_.prepare(net, net.stop_count()); }

  QueryResult query(StopId s, StopId t, Time departure, const QueryOptions& options = {}) {
    detail::require_stops(*net_, s, t);
    QueryResult result{s, t, departure, {}, {}, {}};
    PhaseClock clock(result.stats);
    const Time direct = transfers_.prepare(s, t);
    const auto from_target = [this](Vertex v) { return transfers_.to_target(v); };
    detail::Endpoints<decltype(from_target)> ends{direct, transfers_.initial(), from_target};
    detail::run_shortcut_raptor(state_, transfers_.graph(), s, t, departure, ends, options, result, clock);
    return result;
  }

 private:
  const Network* net_;
  detail::StopTransfers transfers_;
  detail::RaptorState state_;
};

inline QueryResult raptor_query(const Network& transitive_net, StopId s, StopId t, Time departure,
                                const QueryOptions& options = {}) {
  return TransitiveRaptor(transitive_net).query(s, t, departure, options);
}

}  // namespace ultra
