#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ultra/graph/static_graph.hpp"
#include "ultra/types.hpp"

namespace ultra {

struct Stop {
  Time buffer_time = 0;
};

struct Trip {
  std::vector<StopId> stops;
  std::vector<Time> arrivals;
  std::vector<Time> departures;

  std::size_t size() const noexcept { return stops.size(); }
};

struct StopEvent {
  Time arrival;
  Time departure;
};

// Trips sharing a stop sequence that never overtake one another. Trips are
// ordered so that every event time is non-decreasing in the trip index.
struct Route {
  std::vector<StopId> stops;
  std::vector<TripId> trips;
  std::vector<StopEvent> events;  // trip-major: events[k * stops.size() + i]

  std::size_t size() const noexcept { return stops.size(); }
  std::size_t trip_count() const noexcept { return trips.size(); }
  const StopEvent& event(std::size_t k, std::size_t i) const noexcept { return events[k * stops.size() + i]; }

  // Index of the first trip departing position i at or after `time`, or
  // trip_count() if there is none.
  std::size_t earliest_trip(std::size_t i, Time time) const noexcept {
    std::size_t lo = 0, hi = trips.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (event(mid, i).departure < time) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  }
};

struct RouteStop {
  RouteId route;
  std::uint32_t position;
};

// Directed weighted graph of the non-scheduled mode. No closure, symmetry or
// connectivity is assumed.
class TransferGraph {
 public:
  TransferGraph() = default;
  TransferGraph(std::size_t vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)), forward_(vertex_count, edges_) {
    backward_ = forward_.reversed();
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const StaticGraph& forward() const noexcept { return forward_; }
  const StaticGraph& backward() const noexcept { return backward_; }
  std::span<const Arc> out(Vertex v) const noexcept { return forward_.out(v); }
  std::span<const Arc> in(Vertex v) const noexcept { return backward_.out(v); }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  StaticGraph forward_;
  StaticGraph backward_;
};

// True iff the trips are earlier than each other at some event and later at
// another one. Both trips must share their stop sequence.
inline bool overtakes(const Trip& a, const Trip& b) {
  if (a.stops != b.stops || a.arrivals.size() != a.size() || b.arrivals.size() != b.size() ||
      a.departures.size() != a.size() || b.departures.size() != b.size()) {
    throw ContractViolation("overtakes: trips do not share a stop sequence");
  }
  bool earlier = false, later = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    earlier |= a.arrivals[i] < b.arrivals[i] || a.departures[i] < b.departures[i];
    later |= a.arrivals[i] > b.arrivals[i] || a.departures[i] > b.departures[i];
  }
  return earlier && later;
}

namespace detail {

inline bool lexicographically_earlier(const Trip& a, const Trip& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.departures[i] != b.departures[i]) return a.departures[i] < b.departures[i];
    if (a.arrivals[i] != b.arrivals[i]) return a.arrivals[i] < b.arrivals[i];
  }
  return false;
}

inline void check_trip_shape(const Trip& trip, TripId id) {
  if (trip.size() < 2 || trip.arrivals.size() != trip.size() || trip.departures.size() != trip.size()) {
    throw ContractViolation("trip " + std::to_string(id) + " is malformed");
  }
}

}  // namespace detail

// Groups trips by stop sequence, sorts each group by departure and assigns
// every trip to the first route whose last trip it does not overtake.
inline std::vector<Route> partition_trips_into_routes(std::span<const Trip> trips) {
  for (TripId t = 0; t < trips.size(); ++t) detail::check_trip_shape(trips[t], t);

  std::map<std::vector<StopId>, std::size_t> group_of;
  std::vector<std::vector<TripId>> groups;
  for (TripId t = 0; t < trips.size(); ++t) {
    auto [it, inserted] = group_of.try_emplace(trips[t].stops, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(t);
  }

  std::vector<Route> routes;
  for (auto& group : groups) {
    std::stable_sort(group.begin(), group.end(), [&](TripId a, TripId b) {
      return detail::lexicographically_earlier(trips[a], trips[b]);
    });
    const std::size_t first_route = routes.size();
    for (const TripId t : group) {
      bool placed = false;
      for (std::size_t r = first_route; r < routes.size() && !placed; ++r) {
        // Sorted input: not overtaking the last member means dominating all.
        if (!overtakes(trips[routes[r].trips.back()], trips[t])) {
          routes[r].trips.push_back(t);
          placed = true;
        }
      }
      if (!placed) {
        Route route;
        route.stops = trips[t].stops;
        route.trips.push_back(t);
        routes.push_back(std::move(route));
      }
    }
  }

  for (Route& route : routes) {
    route.events.reserve(route.trips.size() * route.size());
    for (const TripId t : route.trips) {
      for (std::size_t i = 0; i < route.size(); ++i) {
        route.events.push_back({trips[t].arrivals[i], trips[t].departures[i]});
      }
    }
  }
  return routes;
}

// Immutable public transit network: stops, trips, derived routes and the
// transfer graph. Stops are the vertices 0..stop_count()-1.
class Network {
 public:
  Network() = default;

  static Network create(std::vector<Stop> stops, std::vector<Trip> trips, TransferGraph graph,
                        Time horizon = 172800) {
    Network net;
    net.stops_ = std::move(stops);
    net.trips_ = std::move(trips);
    net.graph_ = std::move(graph);
    net.horizon_ = horizon;
    for (TripId t = 0; t < net.trips_.size(); ++t) {
      detail::check_trip_shape(net.trips_[t], t);
      for (const StopId s : net.trips_[t].stops) {
        if (s >= net.stops_.size()) throw ContractViolation("trip " + std::to_string(t) + " uses unknown stop");
      }
    }
    net.routes_ = partition_trips_into_routes(net.trips_);
    net.build_index();
    return net;
  }

  std::size_t stop_count() const noexcept { return stops_.size(); }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  bool is_stop(Vertex v) const noexcept { return v < stops_.size(); }
  Time horizon() const noexcept { return horizon_; }

  std::span<const Stop> stops() const noexcept { return stops_; }
  std::span<const Trip> trips() const noexcept { return trips_; }
  std::span<const Route> routes() const noexcept { return routes_; }
  const TransferGraph& graph() const noexcept { return graph_; }

  const Stop& stop(StopId s) const noexcept { return stops_[s]; }
  const Trip& trip(TripId t) const noexcept { return trips_[t]; }
  const Route& route(RouteId r) const noexcept { return routes_[r]; }
  Time buffer(StopId s) const noexcept { return stops_[s].buffer_time; }

  std::span<const RouteStop> routes_at(StopId s) const noexcept {
    return {route_stops_.data() + route_stop_offsets_[s], route_stops_.data() + route_stop_offsets_[s + 1]};
  }

  RouteId route_of(TripId t) const noexcept { return trip_route_[t]; }
  std::size_t index_in_route(TripId t) const noexcept { return trip_index_[t]; }

  // All departure and arrival times, sorted and deduplicated.
  std::vector<Time> event_times() const {
    std::vector<Time> times;
    for (const Trip& trip : trips_) {
      times.insert(times.end(), trip.arrivals.begin(), trip.arrivals.end());
      times.insert(times.end(), trip.departures.begin(), trip.departures.end());
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
  }

  // Same network with every transfer time multiplied by `scale`, rounded
  // half up.
  Network with_scaled_transfers(double scale) const;

 private:
  void build_index() {
    route_stop_offsets_.assign(stops_.size() + 1, 0);
    for (const Route& route : routes_) {
      for (const StopId s : route.stops) ++route_stop_offsets_[s + 1];
    }
    std::partial_sum(route_stop_offsets_.begin(), route_stop_offsets_.end(), route_stop_offsets_.begin());
    route_stops_.resize(route_stop_offsets_.back());
    std::vector<std::uint32_t> fill(route_stop_offsets_.begin(), route_stop_offsets_.end() - 1);
    for (RouteId r = 0; r < routes_.size(); ++r) {
      for (std::uint32_t i = 0; i < routes_[r].size(); ++i) {
        route_stops_[fill[routes_[r].stops[i]]++] = RouteStop{r, i};
      }
    }
    trip_route_.assign(trips_.size(), 0);
    trip_index_.assign(trips_.size(), 0);
    for (RouteId r = 0; r < routes_.size(); ++r) {
      for (std::size_t k = 0; k < routes_[r].trips.size(); ++k) {
        trip_route_[routes_[r].trips[k]] = r;
        trip_index_[routes_[r].trips[k]] = k;
      }
    }
  }

  std::vector<Stop> stops_;
  std::vector<Trip> trips_;
  std::vector<Route> routes_;
  TransferGraph graph_;
  Time horizon_ = 172800;
  std::vector<std::uint32_t> route_stop_offsets_;
  std::vector<RouteStop> route_stops_;
  std::vector<RouteId> trip_route_;
  std::vector<std::size_t> trip_index_;
};

inline Time scale_transfer_time(Time t, double scale) {
  return static_cast<Time>(std::floor(static_cast<double>(t) * scale + 0.5));
}

inline Network Network::with_scaled_transfers(double scale) const {
  if (!(scale >= 0.0)) throw ContractViolation("transfer time scale must be non-negative");
  std::vector<Edge> edges(graph_.edges().begin(), graph_.edges().end());
  for (Edge& e : edges) e.weight = scale_transfer_time(e.weight, scale);
  return create(stops_, trips_, TransferGraph(graph_.vertex_count(), std::move(edges)), horizon_);
}

struct ValidationIssue {
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  void add(std::string location, std::string message) {
    issues.push_back({std::move(location), std::move(message)});
  }
  std::string to_string() const {
    std::string out;
    for (const auto& i : issues) out += i.location + ": " + i.message + "\n";
    return out;
  }
};

inline void validate_trip(const Trip& trip, TripId id, std::size_t stop_count, ValidationReport& report) {
  const std::string where = "trip " + std::to_string(id);
  if (trip.size() < 2) report.add(where, "fewer than two stops");
  if (trip.arrivals.size() != trip.size() || trip.departures.size() != trip.size()) {
    report.add(where, "time lists do not match the stop sequence");
    return;
  }
  for (std::size_t i = 0; i < trip.size(); ++i) {
    const std::string at = where + " position " + std::to_string(i);
    if (trip.stops[i] >= stop_count) report.add(at, "unknown stop " + std::to_string(trip.stops[i]));
    if (trip.arrivals[i] < 0 || trip.departures[i] < 0) report.add(at, "negative time");
    if (trip.arrivals[i] > trip.departures[i]) report.add(at, "arrival after departure");
    if (i + 1 < trip.size() && trip.departures[i] > trip.arrivals[i + 1]) {
      report.add(at, "departure after arrival at the next stop");
    }
  }
}

inline ValidationReport validate_network(const Network& net) {
  ValidationReport report;
  if (net.stop_count() > net.vertex_count()) {
    report.add("network", "more stops than transfer graph vertices");
  }
  for (StopId s = 0; s < net.stop_count(); ++s) {
    if (net.stop(s).buffer_time < 0) report.add("stop " + std::to_string(s), "negative buffer time");
  }
  const auto edges = net.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string where =
        "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" + std::to_string(e.to) + ")";
    if (e.from >= net.vertex_count() || e.to >= net.vertex_count()) report.add(where, "endpoint out of range");
    if (e.weight < 0) report.add(where, "negative transfer time");
  }
  for (TripId t = 0; t < net.trips().size(); ++t) validate_trip(net.trip(t), t, net.stop_count(), report);
  if (!report.ok()) return report;

  std::vector<int> seen(net.trips().size(), 0);
  for (RouteId r = 0; r < net.routes().size(); ++r) {
    const Route& route = net.route(r);
    const std::string where = "route " + std::to_string(r);
    for (std::size_t a = 0; a < route.trips.size(); ++a) {
      const Trip& ta = net.trip(route.trips[a]);
      ++seen[route.trips[a]];
      if (ta.stops != route.stops) report.add(where, "trip " + std::to_string(route.trips[a]) + " has another stop sequence");
      else {
        for (std::size_t b = a + 1; b < route.trips.size(); ++b) {
          const Trip& tb = net.trip(route.trips[b]);
          if (tb.stops == route.stops && overtakes(ta, tb)) {
            report.add(where, "trips " + std::to_string(route.trips[a]) + " and " + std::to_string(route.trips[b]) +
                                  " overtake each other");
          }
        }
      }
    }
    for (std::uint32_t i = 0; i < route.size(); ++i) {
      const auto at = net.routes_at(route.stops[i]);
      const bool indexed = std::any_of(at.begin(), at.end(), [&](const RouteStop& rs) {
        return rs.route == r && rs.position == i;
      });
      if (!indexed) report.add(where, "position " + std::to_string(i) + " missing from the stop index");
    }
  }
  for (TripId t = 0; t < seen.size(); ++t) {
    if (seen[t] != 1) report.add("trip " + std::to_string(t), "belongs to " + std::to_string(seen[t]) + " routes");
  }
  return report;
}

}  // namespace ultra
