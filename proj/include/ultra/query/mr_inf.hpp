#pragma once

#include "ultra/graph/indexed_heap.hpp"
#include "ultra/query/raptor_state.hpp"
#include "ultra/query/upward.hpp"

namespace ultra {

// RAPTOR with unrestricted walking: every round ends with a Dijkstra search
// on the core graph seeded by the stops its trips reached. Targets outside
// the core are reached through the upward search from t.
class MrInf {
 public:
  MrInf(const Network& net, const CoreGraph& core)
      : net_(&net), core_(&core), upward_(core), heap_(core.vertex_count()) {
    if (core.vertex_count() != net.vertex_count()) throw ContractViolation("core does not match the network");
    for (StopId s = 0; s < net.stop_count(); ++s) {
      if (!core.in_core(s)) throw ContractViolation("stop outside the core graph");
    }
    state_.prepare(net, net.vertex_count());
  }

  QueryResult query(Vertex s, Vertex t, Time departure, const QueryOptions& options = {}) {
    if (s >= net_->vertex_count() || t >= net_->vertex_count()) throw ContractViolation("query vertex out of range");
    QueryResult result{s, t, departure, {}, {}, {}};
    PhaseClock clock(result.stats);
    state_.start(s, t, departure);
    state_.improve_target(add_time(departure, upward_.run(s, t)), kNoVertex);
    heap_.clear();
    for (const Vertex c : upward_.forward_space()) {
      if (!core_->in_core(c)) continue;
      const Time arrival = add_time(departure, upward_.forward(c));
      if (arrival < state_.target_best() && state_.improve(c, arrival, {detail::LabelParent::Init, arrival, kNoVertex})) {
        heap_.push_or_decrease(c, arrival);
      }
    }
    walk(true);
    state_.add_label_if_improved(result);
    clock.lap(&QueryStats::init_us);

    while (state_.next_round(options.max_rounds)) {
      const auto& routes = state_.collect_routes();
      clock.lap(&QueryStats::collect_us);
      for (const auto& [r, first] : routes) state_.scan_route(r, first, [](Vertex, Time) {});
      clock.lap(&QueryStats::scan_us);
      heap_.clear();
      for (const Vertex v : state_.trip_updated()) {
        const Time a = state_.best(v);
        if (a < state_.target_best()) heap_.push_or_decrease(v, a);
      }
      walk(false);
      state_.add_label_if_improved(result);
      clock.lap(&QueryStats::relax_us);
    }
    result.stats.rounds = state_.round();
    if (options.journeys) state_.fill_journeys(result);
    clock.finish();
    return result;
  }

 private:
  // Dijkstra on the core from the queued vertices, pruned at the target.
  void walk(bool initial) {
    const std::size_t k = state_.round();
    while (!heap_.empty() && heap_.min_key() < state_.target_best()) {
      const Time du = heap_.min_key();
      const Vertex u = heap_.pop();
      const Vertex root = initial ? kNoVertex : state_.root_of(k, u);
      state_.improve_target(add_time(du, upward_.backward(u)), root);
      for (const Arc& a : core_->core.out(u)) {
        const Time arrival = add_time(du, a.weight);
        if (arrival >= state_.target_best()) continue;
        const detail::LabelParent parent = initial ? detail::LabelParent{detail::LabelParent::Init, arrival, kNoVertex}
                                                   : detail::LabelParent{detail::LabelParent::Transfer, arrival, root};
        if (state_.improve(a.head, arrival, parent)) heap_.push_or_decrease(a.head, arrival);
      }
    }
  }

  const Network* net_;
  const CoreGraph* core_;
  detail::UpwardSearches upward_;
  IndexedHeap heap_;
  detail::RaptorState state_;
};

inline QueryResult mr_inf_query(const Network& net, const CoreGraph& core, Vertex s, Vertex t, Time departure,
                                const QueryOptions& options = {}) {
  return MrInf(net, core).query(s, t, departure, options);
}

}  // namespace ultra
