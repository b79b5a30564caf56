#pragma once

#include <string>
#include <vector>

#include "ultra/oracle/enumerate.hpp"
#include "ultra/oracle/verify.hpp"
#include "ultra/preprocess/compute_shortcuts.hpp"
#include "ultra/query/csa.hpp"
#include "ultra/query/mcsa.hpp"
#include "ultra/query/mr_inf.hpp"
#include "ultra/query/ultra_raptor.hpp"

namespace ultra::oracle {

struct SuiteParams {
  PreprocessParams preprocess;
  SampleSpec samples;
  bool check_journeys = true;
  std::size_t keep_messages = 5;
};

// Outcome of checking one network: the restricted search and all four
// multi-modal engines against the exhaustive one.
struct InstanceReport {
  std::size_t shortcuts = 0;
  std::size_t superfluous_shortcuts = 0;
  std::size_t queries = 0;
  std::size_t restricted_mismatches = 0;  // shortcut-restricted oracle vs full oracle
  std::size_t pareto_mismatches = 0;      // ULTRA-RAPTOR or MR-inf vs oracle
  std::size_t arrival_mismatches = 0;     // ULTRA-CSA or MCSA vs oracle
  std::size_t journey_failures = 0;       // reconstructed journeys that do not validate
  std::size_t unconverged = 0;            // oracle hit its trip cap
  std::vector<std::string> messages;

  std::size_t failures() const noexcept {
    return restricted_mismatches + pareto_mismatches + arrival_mismatches + journey_failures + unconverged;
  }
  bool ok() const noexcept { return failures() == 0; }
};

namespace detail {

inline bool journey_ok(const Network& net, const Journey& j, Vertex s, Vertex t, const ParetoLabel& label) {
  if (!validate_journey(net, j, s, t).ok()) return false;
  const ParetoLabel sig = journey_signature(net, j);
  return sig.arrival == label.arrival && sig.trips == label.trips && sig.departure >= label.departure;
}

inline std::string describe(const char* what, Vertex s, Vertex t, Time dep, const std::vector<ParetoLabel>& expected,
                            const std::vector<ParetoLabel>& actual) {
  return std::string(what) + ": " + Mismatch{s, t, dep, expected, actual}.to_string();
}

}  // namespace detail

// Checks a network with precomputed shortcuts.
inline InstanceReport check_instance(const Network& net, const CoreGraph& core, const ShortcutGraph& shortcuts,
                                     const SuiteParams& params) {
  InstanceReport report;
  report.shortcuts = shortcuts.edge_count();
  const UltraData data = build_ultra_data(net, shortcuts);
  MrInf mr(net, core);
  UltraRaptor ultra_raptor(net, data);
  Mcsa mcsa(net, core);
  UltraCsa ultra_csa(net, data);
  const Oracle oracle(net);
  QueryOptions options;
  options.journeys = params.check_journeys;
  std::vector<std::size_t> used;
  auto note = [&](std::string m) {
    if (report.messages.size() < params.keep_messages) report.messages.push_back(std::move(m));
  };

  for (const QuerySample& q : sample_queries(net, params.samples)) {
    const RoundTable full = oracle.one_to_all(q.source, q.departure);
    const RoundTable restricted =
        oracle.restricted_one_to_all(q.source, q.departure, shortcuts.edges(), q.targets, &used);
    if (!full.converged) {
      ++report.unconverged;
      note("oracle did not converge from " + std::to_string(q.source));
    }
    for (const Vertex t : q.targets) {
      ++report.queries;
      const auto expected = full.pareto(t);
      const auto restricted_labels = restricted.pareto(t);
      if (restricted_labels != expected) {
        ++report.restricted_mismatches;
        note(detail::describe("restricted", q.source, t, q.departure, expected, restricted_labels));
      }
      auto check_pareto = [&](const char* name, const QueryResult& r) {
        if (r.labels != expected) {
          ++report.pareto_mismatches;
          note(detail::describe(name, q.source, t, q.departure, expected, r.labels));
        }
        if (!params.check_journeys) return;
        for (std::size_t i = 0; i < r.labels.size(); ++i) {
          if (!detail::journey_ok(net, r.journeys[i], q.source, t, r.labels[i])) ++report.journey_failures;
        }
      };
      check_pareto("mr-inf", mr.query(q.source, t, q.departure, options));
      check_pareto("ultra-raptor", ultra_raptor.query(q.source, t, q.departure, options));
      const Time earliest = full.earliest_arrival(t);
      auto check_arrival = [&](const char* name, const ArrivalResult& a) {
        if (a.label.arrival != earliest) {
          ++report.arrival_mismatches;
          note(std::string(name) + ": " + std::to_string(q.source) + "->" + std::to_string(t) + " @" +
               std::to_string(q.departure) + " expected " + format_time(earliest) + " got " +
               format_time(a.label.arrival));
        }
        if (params.check_journeys && a.reachable && !detail::journey_ok(net, a.journey, q.source, t, a.label)) {
          ++report.journey_failures;
        }
      };
      check_arrival("mcsa", mcsa.query(q.source, t, q.departure, options));
      check_arrival("ultra-csa", ultra_csa.query(q.source, t, q.departure, options));
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  report.superfluous_shortcuts = shortcuts.edge_count() - used.size();
  return report;
}

// Preprocesses the network with the suite's parameters, then checks it.
inline InstanceReport check_instance(const Network& net, const SuiteParams& params) {
  const CoreGraph core = build_core(net, params.preprocess.core_degree);
  const ShortcutGraph shortcuts = compute_shortcuts(net, core, params.preprocess).shortcuts;
  return check_instance(net, core, shortcuts, params);
}

}  // namespace ultra::oracle
