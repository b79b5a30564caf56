#pragma once

#include "ultra/query/csa_state.hpp"
#include "ultra/query/upward.hpp"

namespace ultra {

// Connection scan interleaved with a Dijkstra search on the core graph:
// before a connection departing at time x is scanned, every queued vertex
// with key at most x is settled.
class Mcsa {
 public:
  Mcsa(const Network& net, const CoreGraph& core)
      : net_(&net), core_(&core), connections_(net), upward_(core), heap_(core.vertex_count()) {
    if (core.vertex_count() != net.vertex_count()) throw ContractViolation("core does not match the network");
    for (StopId s = 0; s < net.stop_count(); ++s) {
      if (!core.in_core(s)) throw ContractViolation("stop outside the core graph");
    }
    state_.prepare(net, connections_, net.vertex_count());
  }

  ArrivalResult query(Vertex s, Vertex t, Time departure, const QueryOptions& options = {}) {
    if (s >= net_->vertex_count() || t >= net_->vertex_count()) throw ContractViolation("query vertex out of range");
    ArrivalResult result;
    result.source = s;
    result.target = t;
    result.departure = departure;
    PhaseClock clock(result.stats);
    state_.start(s, t, departure);
    state_.improve_target(add_time(departure, upward_.run(s, t)), kNoVertex);
    heap_.clear();
    for (const Vertex c : upward_.forward_space()) {
      if (!core_->in_core(c)) continue;
      const Time arrival = add_time(departure, upward_.forward(c));
      if (arrival < state_.target_best() && state_.improve(c, arrival, {detail::CsaLabel::Init, kNoVertex})) {
        heap_.push_or_decrease(c, arrival);
      }
    }
    clock.lap(&QueryStats::init_us);
    for (std::size_t i = connections_.first_departing(departure); i < connections_.size(); ++i) {
      const Connection& c = connections_[i];
      settle_through(c.dep_time);
      if (c.dep_time >= state_.target_best()) break;
      if (!state_.scan(i)) continue;
      if (c.arr_time < state_.target_best() && state_.improve(c.arr_stop, c.arr_time, {detail::CsaLabel::Trip, kNoVertex})) {
        heap_.push_or_decrease(c.arr_stop, c.arr_time);
      }
    }
    settle_through(kInfinity);
    clock.lap(&QueryStats::scan_us);
    clock.finish();
    state_.fill(result, options);
    return result;
  }

 private:
  // Settles queued vertices with key <= limit, pruned at the target.
  void settle_through(Time limit) {
    while (!heap_.empty() && heap_.min_key() <= limit && heap_.min_key() < state_.target_best()) {
      const Time du = heap_.min_key();
      const Vertex u = heap_.pop();
      const Vertex root = state_.root_of(u);
      state_.improve_target(add_time(du, upward_.backward(u)), root);
      const detail::CsaLabel label = root == kNoVertex ? detail::CsaLabel{detail::CsaLabel::Init, kNoVertex}
                                                       : detail::CsaLabel{detail::CsaLabel::Transfer, root};
      for (const Arc& a : core_->core.out(u)) {
        const Time arrival = add_time(du, a.weight);
        if (arrival < state_.target_best() && state_.improve(a.head, arrival, label)) {
          heap_.push_or_decrease(a.head, arrival);
        }
      }
    }
  }

  const Network* net_;
  const CoreGraph* core_;
  ConnectionArray connections_;
  detail::UpwardSearches upward_;
  IndexedHeap heap_;
  detail::CsaState state_;
};

inline ArrivalResult mcsa_query(const Network& net, const CoreGraph& core, Vertex s, Vertex t, Time departure,
                                const QueryOptions& options = {}) {
  return Mcsa(net, core).query(s, t, departure, options);
}

}  // namespace ultra
