#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ultra/oracle/enumerate.hpp"
#include "ultra/transit/journey.hpp"
#include "ultra/transit/network.hpp"

namespace ultra::oracle {

struct SampleSpec {
  std::uint64_t seed = 1;
  std::size_t all_pairs_limit = 25;   // all stop pairs up to this many stops
  std::size_t sampled_pairs = 500;    // otherwise this many pairs
  std::size_t departures_per_source = 2;
  std::size_t vertex_sources = 0;     // extra non-stop sources, all vertices as targets
};

// One departure from one source; every listed target is checked.
struct QuerySample {
  Vertex source;
  Time departure;
  std::vector<Vertex> targets;
};

namespace detail {

// Event times, the latest boarding times at the source and the horizon ends.
inline std::vector<Time> departure_pool(const Network& net, Vertex source) {
  std::vector<Time> pool = net.event_times();
  pool.push_back(0);
  pool.push_back(net.horizon());
  if (net.is_stop(source)) {
    for (const Trip& trip : net.trips()) {
      for (std::size_t i = 0; i + 1 < trip.size(); ++i) {
        if (trip.stops[i] == source) pool.push_back(trip.departures[i] - net.buffer(source));
      }
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

}  // namespace detail

inline std::vector<QuerySample> sample_queries(const Network& net, const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::size_t stops = net.stop_count();
  std::vector<std::vector<Vertex>> targets(net.vertex_count());
  if (stops <= spec.all_pairs_limit) {
    for (Vertex s = 0; s < stops; ++s) {
      for (Vertex t = 0; t < stops; ++t) targets[s].push_back(t);
    }
  } else {
    std::set<std::pair<Vertex, Vertex>> pairs;
    while (pairs.size() < std::min(spec.sampled_pairs, stops * stops)) {
      pairs.insert({static_cast<Vertex>(rng() % stops), static_cast<Vertex>(rng() % stops)});
    }
    for (const auto& [s, t] : pairs) targets[s].push_back(t);
  }
  const std::size_t extra = net.vertex_count() - stops;
  for (std::size_t i = 0; i < spec.vertex_sources && extra > 0; ++i) {
    const Vertex s = static_cast<Vertex>(stops + rng() % extra);
    if (!targets[s].empty()) continue;
    for (Vertex t = 0; t < net.vertex_count(); t += 1 + static_cast<Vertex>(rng() % 3)) targets[s].push_back(t);
  }

  std::vector<QuerySample> samples;
  for (Vertex s = 0; s < net.vertex_count(); ++s) {
    if (targets[s].empty()) continue;
    const auto pool = detail::departure_pool(net, s);
    for (std::size_t k = 0; k < spec.departures_per_source; ++k) {
      samples.push_back({s, pool[rng() % pool.size()], targets[s]});
    }
  }
  return samples;
}

struct Mismatch {
  Vertex source;
  Vertex target;
  Time departure;
  std::vector<ParetoLabel> expected;
  std::vector<ParetoLabel> actual;

  std::string to_string() const {
    std::ostringstream out;
    out << source << "->" << target << " @" << departure << " expected {";
    for (const auto& l : expected) out << ' ' << ultra::to_string(l);
    out << " } got {";
    for (const auto& l : actual) out << ' ' << ultra::to_string(l);
    out << " }";
    return out.str();
  }
};

struct SufficiencyReport {
  std::size_t queries = 0;
  std::vector<Mismatch> mismatches;
  std::size_t used_shortcuts = 0;
  std::size_t superfluous_shortcuts = 0;  // on no reconstructed optimal journey of the sample

  bool ok() const noexcept { return mismatches.empty(); }
};

// Compares the Pareto sets of a shortcut-restricted search with the full one.
inline SufficiencyReport verify_sufficiency(const Oracle& oracle, std::span<const Edge> shortcuts,
                                            std::span<const QuerySample> samples) {
  SufficiencyReport report;
  std::vector<std::size_t> used;
  for (const QuerySample& q : samples) {
    const RoundTable full = oracle.one_to_all(q.source, q.departure);
    const RoundTable restricted = oracle.restricted_one_to_all(q.source, q.departure, shortcuts, q.targets, &used);
    for (const Vertex t : q.targets) {
      ++report.queries;
      auto expected = full.pareto(t), actual = restricted.pareto(t);
      if (expected != actual) report.mismatches.push_back({q.source, t, q.departure, expected, actual});
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  report.used_shortcuts = used.size();
  report.superfluous_shortcuts = shortcuts.size() - used.size();
  return report;
}

inline SufficiencyReport verify_sufficiency(const Network& net, std::span<const Edge> shortcuts,
                                            const SampleSpec& spec = {}) {
  const Oracle oracle(net);
  const auto samples = sample_queries(net, spec);
  return verify_sufficiency(oracle, shortcuts, samples);
}

}  // namespace ultra::oracle
