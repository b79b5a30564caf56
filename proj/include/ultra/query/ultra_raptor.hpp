#pragma once

#include <utility>
#include <vector>

#include "ultra/ch/buckets.hpp"
#include "ultra/query/shortcut_raptor.hpp"
#include "ultra/query/ultra_data.hpp"

namespace ultra {

// Reusable ULTRA-RAPTOR workspace. The referenced data must outlive it.
class UltraRaptor {
 public:
  UltraRaptor(const Network& net, const ShortcutGraph& shortcuts, const ContractionHierarchy& ch,
              const BucketStore& forward, const BucketStore& backward)
      : net_(&net), shortcuts_(&shortcuts), pair_query_(ch, forward, backward) {
    if (ch.vertex_count() != net.vertex_count()) throw ContractViolation("hierarchy does not match the network");
    state_.prepare(net, net.stop_count());
  }

  UltraRaptor(const Network& net, const UltraData& data)
      : UltraRaptor(net, data.shortcuts, data.ch, data.forward, data.backward) {}

  QueryResult query(Vertex s, Vertex t, Time departure, const QueryOptions& options = {}) {
    if (s >= net_->vertex_count() || t >= net_->vertex_count()) throw ContractViolation("query vertex out of range");
    QueryResult result{s, t, departure, {}, {}, {}};
    PhaseClock clock(result.stats);
    const auto pruned = pair_query_.run(s, t);
    initial_.clear();
    for (const Vertex v : pruned.forward_targets) initial_.push_back({v, pair_query_.to_target(v)});
    const auto from_target = [this](Vertex v) { return pair_query_.from_target(v); };
    detail::Endpoints<decltype(from_target)> ends{pruned.distance, initial_, from_target};
    detail::run_shortcut_raptor(state_, shortcuts_->graph(), s, t, departure, ends, options, result, clock);
    return result;
  }

 private:
  const Network* net_;
  const ShortcutGraph* shortcuts_;
  PrunedPairQuery pair_query_;
  detail::RaptorState state_;
  std::vector<std::pair<Vertex, Time>> initial_;
};

inline QueryResult ultra_raptor_query(const Network& net, const ShortcutGraph& shortcuts, const BucketStore& forward,
                                      const BucketStore& backward, const ContractionHierarchy& ch, Vertex s, Vertex t,
                                      Time departure, const QueryOptions& options = {}) {
  return UltraRaptor(net, shortcuts, ch, forward, backward).query(s, t, departure, options);
}

}  // namespace ultra
