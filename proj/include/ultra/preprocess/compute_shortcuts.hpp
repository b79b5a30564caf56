#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "ultra/ch/contraction.hpp"
#include "ultra/preprocess/shortcut_graph.hpp"
#include "ultra/preprocess/shortcut_search.hpp"
#include "ultra/preprocess/zero_groups.hpp"
#include "ultra/transit/network.hpp"

namespace ultra {

struct PreprocessParams {
  Time witness_limit = 900;
  double core_degree = 14.0;
  std::size_t workers = 1;
  bool drop_disconnected_pairs = false;
  bool keep_origins = false;
};

struct PreprocessResult {
  ShortcutGraph shortcuts;
  std::vector<ShortcutOrigin> origins;  // only with keep_origins
};

inline CoreGraph build_core(const Network& net, double core_degree) {
  std::vector<bool> keep(net.vertex_count(), false);
  for (StopId s = 0; s < net.stop_count(); ++s) keep[s] = true;
  return contract_core(net.vertex_count(), net.graph().edges(), keep, core_degree);
}

// Sources are handed out to workers through an atomic cursor; each worker
// keeps its own emitted set and the sets are merged at the end.
inline PreprocessResult compute_shortcuts(const Network& net, const CoreGraph& core, const PreprocessParams& params) {
  if (params.witness_limit < 0) throw ContractViolation("witness limit must be non-negative");
  if (params.workers == 0) throw ContractViolation("at least one worker is required");
  const ZeroGroups groups = zero_groups(net, core);
  std::vector<Vertex> sources;
  for (Vertex p = 0; p < groups.proxy_count(); ++p) {
    if (!groups.stops_of[p].empty()) sources.push_back(p);
  }

  const SearchParams search{params.witness_limit, params.drop_disconnected_pairs, params.keep_origins};
  std::vector<ShortcutGraph> results(params.workers);
  std::vector<std::vector<ShortcutOrigin>> origins(params.workers);
  std::vector<std::exception_ptr> failures(params.workers);
  std::atomic<std::size_t> cursor{0};
  auto work = [&](std::size_t id) {
    try {
      ShortcutSearch worker(net, groups, search);
      for (std::size_t i = cursor++; i < sources.size(); i = cursor++) worker.run(sources[i]);
      results[id] = ShortcutGraph(net.stop_count(), worker.shortcut_edges());
      origins[id] = worker.origins();
    } catch (...) {
      failures[id] = std::current_exception();
      cursor = sources.size();
    }
  };

  if (params.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t id = 0; id < params.workers; ++id) threads.emplace_back(work, id);
    for (auto& t : threads) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  PreprocessResult result;
  result.shortcuts = merge_worker_shortcuts(results);
  for (auto& o : origins) result.origins.insert(result.origins.end(), o.begin(), o.end());
  return result;
}

inline PreprocessResult compute_shortcuts(const Network& net, const PreprocessParams& params) {
  return compute_shortcuts(net, build_core(net, params.core_degree), params);
}

}  // namespace ultra
