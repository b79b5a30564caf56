#pragma once

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "ultra/ch/buckets.hpp"
#include "ultra/query/csa_state.hpp"
#include "ultra/query/shortcut_raptor.hpp"
#include "ultra/query/transitive.hpp"
#include "ultra/query/ultra_data.hpp"

namespace ultra {
namespace detail {

inline StaticGraph weight_sorted(const StaticGraph& g) {
  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.weight, a.to) < std::tie(b.from, b.weight, b.to);
  });
  return StaticGraph(g.vertex_count(), edges);
}

// Connection scan whose transfers between trips are single hops in
// `transfers`, a graph over stops with every out-arc list sorted by weight.
template <typename FromTarget>
void run_shortcut_csa(CsaState& state, const ConnectionArray& connections, const StaticGraph& transfers, Vertex s,
                      Vertex t, Time departure, const Endpoints<FromTarget>& ends, const QueryOptions& options,
                      ArrivalResult& result, PhaseClock& clock) {
  state.start(s, t, departure);
  state.improve_target(add_time(departure, ends.direct), kNoVertex);
  for (const auto& [v, d] : ends.initial) {
    const Time arrival = add_time(departure, d);
    if (arrival < state.target_best()) state.improve(v, arrival, CsaLabel{CsaLabel::Init, kNoVertex});
  }
  clock.lap(&QueryStats::init_us);
  for (std::size_t i = connections.first_departing(departure); i < connections.size(); ++i) {
    const Connection& c = connections[i];
    if (c.dep_time >= state.target_best()) break;
    if (!state.scan(i)) continue;
    const StopId v = c.arr_stop;
    const Time a = c.arr_time;
    state.improve_target(add_time(a, ends.from_target(v)), v);
    if (a >= state.target_best()) continue;
    state.improve(v, a, CsaLabel{CsaLabel::Trip, kNoVertex});
    // Arcs are sorted by weight.
    for (const Arc& arc : transfers.out(v)) {
      const Time arrival = add_time(a, arc.weight);
      if (arrival >= state.target_best()) break;
      state.improve(arc.head, arrival, CsaLabel{CsaLabel::Transfer, v});
    }
  }
  clock.lap(&QueryStats::scan_us);
  clock.finish();
  state.fill(result, options);
}

}  // namespace detail

// CSA on a network whose transfer graph is transitively closed over stops.
// Minimizes arrival only.
class TransitiveCsa {
 public:
  explicit TransitiveCsa(const Network& net)
      : net_(&net), connections_(net), transfers_(net), sorted_(detail::weight_sorted(transfers_.graph())) {
    state_.prepare(net, connections_, net.stop_count());
  }

  ArrivalResult query(StopId s, StopId t, Time departure, const QueryOptions& options = {}) {
    detail::require_stops(*net_, s, t);
    ArrivalResult result;
    result.source = s;
    result.target = t;
    result.departure = departure;
    PhaseClock clock(result.stats);
    const Time direct = transfers_.prepare(s, t);
    const auto from_target = [this](Vertex v) { return transfers_.to_target(v); };
    detail::Endpoints<decltype(from_target)> ends{direct, transfers_.initial(), from_target};
    detail::run_shortcut_csa(state_, connections_, sorted_, s, t, departure, ends, options, result, clock);
    return result;
  }

 private:
  const Network* net_;
  ConnectionArray connections_;
  detail::StopTransfers transfers_;
  StaticGraph sorted_;
  detail::CsaState state_;
};

inline ArrivalResult csa_query(const Network& transitive_net, StopId s, StopId t, Time departure,
                               const QueryOptions& options = {}) {
  return TransitiveCsa(transitive_net).query(s, t, departure, options);
}

// ULTRA-CSA: pruned bucket query for the initial and final transfers and
// shortcut hops after every improving connection.
class UltraCsa {
 public:
  UltraCsa(const Network& net, const ShortcutGraph& shortcuts, const ContractionHierarchy& ch,
           const BucketStore& forward, const BucketStore& backward)
      : net_(&net),
        shortcuts_(detail::weight_sorted(shortcuts.graph())),
        connections_(net),
        pair_query_(ch, forward, backward) {
    if (ch.vertex_count() != net.vertex_count()) throw ContractViolation("hierarchy does not match the network");
    state_.prepare(net, connections_, net.stop_count());
  }

  UltraCsa(const Network& net, const UltraData& data)
      : UltraCsa(net, data.shortcuts, data.ch, data.forward, data.backward) {}

  ArrivalResult query(Vertex s, Vertex t, Time departure, const QueryOptions& options = {}) {
    if (s >= net_->vertex_count() || t >= net_->vertex_count()) throw ContractViolation("query vertex out of range");
    ArrivalResult result;
    result.source = s;
    result.target = t;
    result.departure = departure;
    PhaseClock clock(result.stats);
    const auto pruned = pair_query_.run(s, t);
    initial_.clear();
    for (const Vertex v : pruned.forward_targets) initial_.push_back({v, pair_query_.to_target(v)});
    const auto from_target = [this](Vertex v) { return pair_query_.from_target(v); };
    detail::Endpoints<decltype(from_target)> ends{pruned.distance, initial_, from_target};
    detail::run_shortcut_csa(state_, connections_, shortcuts_, s, t, departure, ends, options, result, clock);
    return result;
  }

 private:
  const Network* net_;
  StaticGraph shortcuts_;
  ConnectionArray connections_;
  PrunedPairQuery pair_query_;
  detail::CsaState state_;
  std::vector<std::pair<Vertex, Time>> initial_;
};

inline ArrivalResult ultra_csa_query(const Network& net, const ShortcutGraph& shortcuts, const BucketStore& forward,
                                     const BucketStore& backward, const ContractionHierarchy& ch, Vertex s, Vertex t,
                                     Time departure, const QueryOptions& options = {}) {
  return UltraCsa(net, shortcuts, ch, forward, backward).query(s, t, departure, options);
}

}  // namespace ultra
