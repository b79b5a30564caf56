#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "ultra/transit/network.hpp"

namespace ultra {

struct Connection {
  StopId dep_stop;
  StopId arr_stop;
  Time dep_time;
  Time arr_time;
  TripId trip;
  std::uint32_t position;  // index of dep_stop within the trip
};

// Every trip hop as one connection, ordered by (dep_time, arr_time, trip,
// position). Zero-duration hops of one trip thus stay in ride order.
class ConnectionArray {
 public:
  ConnectionArray() = default;

  explicit ConnectionArray(const Network& net) {
    for (TripId t = 0; t < net.trips().size(); ++t) {
      const Trip& trip = net.trip(t);
      for (std::uint32_t i = 0; i + 1 < trip.size(); ++i) {
        connections_.push_back({trip.stops[i], trip.stops[i + 1], trip.departures[i], trip.arrivals[i + 1], t, i});
      }
    }
    std::sort(connections_.begin(), connections_.end(), [](const Connection& a, const Connection& b) {
      return std::tie(a.dep_time, a.arr_time, a.trip, a.position) < std::tie(b.dep_time, b.arr_time, b.trip, b.position);
    });
  }

  std::size_t size() const noexcept { return connections_.size(); }
  const Connection& operator[](std::size_t i) const noexcept { return connections_[i]; }
  std::span<const Connection> all() const noexcept { return connections_; }

  // Index of the first connection departing at or after `time`.
  std::size_t first_departing(Time time) const noexcept {
    return static_cast<std::size_t>(
        std::partition_point(connections_.begin(), connections_.end(),
                             [time](const Connection& c) { return c.dep_time < time; }) -
        connections_.begin());
  }

  // Sorted, and every connection matches its trip.
  bool consistent_with(const Network& net) const {
    std::size_t hops = 0;
    for (const Trip& t : net.trips()) hops += t.size() - 1;
    if (hops != connections_.size()) return false;
    for (std::size_t i = 0; i < connections_.size(); ++i) {
      const Connection& c = connections_[i];
      if (i > 0 && connections_[i - 1].dep_time > c.dep_time) return false;
      if (c.trip >= net.trips().size()) return false;
      const Trip& trip = net.trip(c.trip);
      if (c.position + 1 >= trip.size() || trip.stops[c.position] != c.dep_stop ||
          trip.stops[c.position + 1] != c.arr_stop || trip.departures[c.position] != c.dep_time ||
          trip.arrivals[c.position + 1] != c.arr_time) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<Connection> connections_;
};

}  // namespace ultra
