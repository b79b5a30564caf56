#pragma once

#include <chrono>
#include <vector>

#include "ultra/transit/journey.hpp"

namespace ultra {

// Wall-clock split of one query. Phases that an engine does not have stay 0.
struct QueryStats {
  double init_us = 0;
  double collect_us = 0;
  double scan_us = 0;
  double relax_us = 0;
  double total_us = 0;
  std::size_t rounds = 0;
};

class PhaseClock {
 public:
  using Clock = std::chrono::steady_clock;

  explicit PhaseClock(QueryStats& stats) : stats_(&stats), start_(Clock::now()), last_(start_) {}

  // Adds the time since the previous lap to `phase`.
  void lap(double QueryStats::*phase) {
    const auto now = Clock::now();
    stats_->*phase += std::chrono::duration<double, std::micro>(now - last_).count();
    last_ = now;
  }

  void finish() { stats_->total_us = std::chrono::duration<double, std::micro>(Clock::now() - start_).count(); }

 private:
  QueryStats* stats_;
  Clock::time_point start_;
  Clock::time_point last_;
};

struct QueryOptions {
  bool journeys = true;
  // Rounds after the initial transfers. Capping below the natural end gives
  // the labels with at most that many trips.
  std::size_t max_rounds = 30;
};

// Pareto set at the target: one label per trip count, arrival strictly
// decreasing as the trip count grows. Journeys are filled in on request and
// then line up with the labels.
struct QueryResult {
  Vertex source = 0;
  Vertex target = 0;
  Time departure = 0;
  std::vector<ParetoLabel> labels;
  std::vector<Journey> journeys;
  QueryStats stats;

  Time earliest_arrival() const noexcept { return labels.empty() ? kInfinity : labels.back().arrival; }
};

// Earliest arrival only; `trips` is that of the journey found, not a minimum.
struct ArrivalResult {
  Vertex source = 0;
  Vertex target = 0;
  Time departure = 0;
  ParetoLabel label;  // arrival kInfinity when unreachable
  bool reachable = false;
  Journey journey;    // filled in on request
  QueryStats stats;
};

}  // namespace ultra
