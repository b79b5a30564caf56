#pragma once

#include <span>
#include <utility>

#include "ultra/graph/static_graph.hpp"
#include "ultra/query/raptor_state.hpp"

namespace ultra::detail {

// Distances a shortcut-based RAPTOR starts from: d(s,t), the stops worth
// initializing with d(s,v), and d(v,t) for the stops that may reach t.
template <typename FromTarget>
struct Endpoints {
  Time direct = kInfinity;
  std::span<const std::pair<Vertex, Time>> initial;
  FromTarget from_target;
};

// RAPTOR whose transfers between trips are single hops in `transfers`, a
// graph over stops. Initial and final transfers come from `ends`. Time
// spent by the caller before the call is booked as initialization.
template <typename FromTarget>
void run_shortcut_raptor(RaptorState& state, const StaticGraph& transfers, Vertex s, Vertex t,
                         Time departure, const Endpoints<FromTarget>& ends, const QueryOptions& options,
                         QueryResult& result, PhaseClock& clock) {
  state.start(s, t, departure);
  state.improve_target(add_time(departure, ends.direct), kNoVertex);
  for (const auto& [v, d] : ends.initial) {
    const Time arrival = add_time(departure, d);
    if (arrival < state.target_best()) state.improve(v, arrival, LabelParent{LabelParent::Init, arrival, kNoVertex});
  }
  state.add_label_if_improved(result);
  clock.lap(&QueryStats::init_us);

  while (state.next_round(options.max_rounds)) {
    const auto& routes = state.collect_routes();
    clock.lap(&QueryStats::collect_us);
    for (const auto& [r, first] : routes) {
      state.scan_route(r, first, [&](Vertex v, Time arrival) {
        state.improve_target(add_time(arrival, ends.from_target(v)), v);
      });
    }
    clock.lap(&QueryStats::scan_us);
    const std::size_t k = state.round();
    for (const Vertex v : state.trip_updated()) {
      const Time a = state.trip(k, v).arrival;
      for (const Arc& arc : transfers.out(v)) {
        const Time arrival = add_time(a, arc.weight);
        if (arrival < state.target_best()) state.improve(arc.head, arrival, LabelParent{LabelParent::Transfer, arrival, v});
      }
    }
    state.add_label_if_improved(result);
    clock.lap(&QueryStats::relax_us);
  }
  result.stats.rounds = state.round();
  if (options.journeys) state.fill_journeys(result);
  clock.finish();
}

}  // namespace ultra::detail
