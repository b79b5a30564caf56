#pragma once

#include <numeric>
#include <vector>

#include "ultra/ch/buckets.hpp"
#include "ultra/ch/contraction.hpp"
#include "ultra/preprocess/shortcut_graph.hpp"
#include "ultra/transit/network.hpp"

namespace ultra {

// Everything the shortcut-based engines need besides the network: a full
// hierarchy of the transfer graph with stop buckets in both directions.
struct UltraData {
  ShortcutGraph shortcuts;
  ContractionHierarchy ch;
  BucketStore forward;   // d(s, stop)
  BucketStore backward;  // d(stop, t)
};

inline UltraData build_ultra_data(const Network& net, ShortcutGraph shortcuts, ContractionParams params = {}) {
  if (shortcuts.stop_count() != net.stop_count() && shortcuts.edge_count() > 0) {
    throw ContractViolation("shortcut graph does not match the network");
  }
  if (shortcuts.stop_count() != net.stop_count()) shortcuts = ShortcutGraph(net.stop_count(), {});
  UltraData data;
  data.shortcuts = std::move(shortcuts);
  data.ch = contract_full(net.vertex_count(), net.graph().edges(), params);
  std::vector<Vertex> stops(net.stop_count());
  std::iota(stops.begin(), stops.end(), 0);
  data.forward = build_buckets(data.ch, stops, BucketDirection::ToTargets);
  data.backward = build_buckets(data.ch, stops, BucketDirection::FromTargets);
  return data;
}

}  // namespace ultra
