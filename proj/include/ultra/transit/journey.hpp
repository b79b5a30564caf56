#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ultra/transit/network.hpp"
#include "ultra/types.hpp"

namespace ultra {

struct TripLeg {
  TripId trip;
  std::uint32_t board;
  std::uint32_t alight;

  friend bool operator==(const TripLeg&, const TripLeg&) = default;
};

// A transfer between two vertices. `path` is optional: transfers realised by
// a shortcut edge or by an overlay search only carry their duration.
struct Transfer {
  Vertex from;
  Vertex to;
  Time duration = 0;
  std::vector<Vertex> path = {};

  bool empty() const noexcept { return from == to && duration == 0; }
};

// Alternating transfers and trip legs: transfers.size() == legs.size() + 1.
struct Journey {
  std::vector<Transfer> transfers;
  std::vector<TripLeg> legs;
  Time depart_at = 0;  // departure of a journey without trips

  std::size_t trip_count() const noexcept { return legs.size(); }
};

struct ParetoLabel {
  Time departure = 0;
  Time arrival = kInfinity;
  std::uint32_t trips = 0;

  friend bool operator==(const ParetoLabel&, const ParetoLabel&) = default;
};

// Weak: no criterion is worse. Strict additionally needs one to be better.
constexpr bool dominates(const ParetoLabel& a, const ParetoLabel& b, bool strict = false) noexcept {
  const bool weak = a.departure >= b.departure && a.arrival <= b.arrival && a.trips <= b.trips;
  if (!strict || !weak) return weak;
  return a.departure > b.departure || a.arrival < b.arrival || a.trips < b.trips;
}

inline std::string to_string(const ParetoLabel& l) {
  return "(" + format_time(l.departure) + ", " + format_time(l.arrival) + ", " + std::to_string(l.trips) + ")";
}

namespace detail {

inline void check_journey_shape(const Network& net, const Journey& j) {
  if (j.transfers.size() != j.legs.size() + 1) throw ContractViolation("journey does not alternate");
  for (std::size_t i = 0; i < j.legs.size(); ++i) {
    const TripLeg& leg = j.legs[i];
    if (leg.trip >= net.trips().size()) throw ContractViolation("journey uses an unknown trip");
    const Trip& trip = net.trip(leg.trip);
    if (!(leg.board < leg.alight && leg.alight < trip.size())) throw ContractViolation("invalid trip leg indices");
    if (j.transfers[i].to != trip.stops[leg.board]) throw ContractViolation("transfer does not end at the boarding stop");
    if (j.transfers[i + 1].from != trip.stops[leg.alight]) {
      throw ContractViolation("transfer does not start at the alighting stop");
    }
  }
  for (const Transfer& t : j.transfers) {
    if (t.duration < 0) throw ContractViolation("negative transfer duration");
  }
}

}  // namespace detail

// (departure, arrival, trips) of a journey. Throws ContractViolation when an
// intermediate transfer misses its connection.
inline ParetoLabel journey_signature(const Network& net, const Journey& j) {
  detail::check_journey_shape(net, j);
  if (j.legs.empty()) {
    const Time d = j.transfers.front().duration;
    return {j.depart_at, add_time(j.depart_at, d), 0};
  }
  for (std::size_t i = 0; i + 1 < j.legs.size(); ++i) {
    const Trip& a = net.trip(j.legs[i].trip);
    const Trip& b = net.trip(j.legs[i + 1].trip);
    const StopId board = b.stops[j.legs[i + 1].board];
    const Time ready = a.arrivals[j.legs[i].alight] + j.transfers[i + 1].duration + net.buffer(board);
    if (ready > b.departures[j.legs[i + 1].board]) {
      throw ContractViolation("intermediate transfer " + std::to_string(i + 1) + " misses its trip");
    }
  }
  const Trip& first = net.trip(j.legs.front().trip);
  const Trip& last = net.trip(j.legs.back().trip);
  const StopId first_stop = first.stops[j.legs.front().board];
  return {first.departures[j.legs.front().board] - net.buffer(first_stop) - j.transfers.front().duration,
          last.arrivals[j.legs.back().alight] + j.transfers.back().duration,
          static_cast<std::uint32_t>(j.legs.size())};
}

// Full structural check of a journey between two vertices, including vertex
// paths where present.
inline ValidationReport validate_journey(const Network& net, const Journey& j, Vertex source, Vertex target) {
  ValidationReport report;
  try {
    journey_signature(net, j);
  } catch (const ContractViolation& e) {
    report.add("journey", e.what());
    return report;
  }
  if (j.transfers.front().from != source) report.add("journey", "does not start at the source");
  if (j.transfers.back().to != target) report.add("journey", "does not end at the target");
  for (std::size_t i = 0; i < j.transfers.size(); ++i) {
    const Transfer& t = j.transfers[i];
    if (t.path.empty()) continue;
    const std::string where = "transfer " + std::to_string(i);
    if (t.path.front() != t.from || t.path.back() != t.to) {
      report.add(where, "path endpoints differ from the transfer");
      continue;
    }
    Time length = 0;
    for (std::size_t k = 0; k + 1 < t.path.size(); ++k) {
      Time best = kInfinity;
      for (const Arc& a : net.graph().out(t.path[k])) {
        if (a.head == t.path[k + 1]) best = std::min(best, a.weight);
      }
      if (best == kInfinity) {
        report.add(where, "path uses a missing edge");
        length = kInfinity;
        break;
      }
      length = add_time(length, best);
    }
    if (length != kInfinity && length != t.duration) report.add(where, "path length differs from the duration");
  }
  return report;
}

}  // namespace ultra
