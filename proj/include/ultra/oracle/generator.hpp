#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ultra/transit/network.hpp"

namespace ultra::oracle {

struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t stop_count = 10;
  std::size_t extra_vertices = 20;
  double edge_density = 0.7;            // probability of each lattice edge
  double zero_edge_probability = 0.05;  // lattice edges of weight 0
  double one_way_probability = 0.1;
  std::size_t route_count = 6;
  std::size_t trips_per_route = 4;
  std::size_t max_route_length = 6;
  Time service_start = 6 * 3600;
  Time service_span = 3 * 3600;
  Time horizon = 172800;
  Time time_grid = 60;  // event times are multiples of this
  Time max_buffer = 120;
  double isolated_stop_probability = 0.1;
  double jitter_probability = 0.3;  // per trip: perturb ride times, may overtake
  double transfer_time_scale = 1.0;
};

namespace detail {

struct Point {
  double x;
  double y;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace detail

// Road-like transfer graph on a jittered lattice with stops scattered over
// it, and routes that hop between nearby stops. Deterministic in the seed.
inline Network generate_network(const GeneratorParams& p) {
  if (p.stop_count < 2) throw ContractViolation("generator needs at least two stops");
  std::mt19937_64 rng(p.seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto chance = [&](double q) { return uniform(0.0, 1.0) < q; };
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  const std::size_t n = p.stop_count + p.extra_vertices;
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  // Lattice cell i goes to vertex order[i]; stops land on random cells.
  std::vector<Vertex> order(side * side);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Vertex> vertex_of_cell(side * side, kNoVertex);
  std::vector<detail::Point> position(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cell = order[i];
    vertex_of_cell[cell] = static_cast<Vertex>(i);
    position[i] = {static_cast<double>(cell % side) + uniform(-0.3, 0.3),
                   static_cast<double>(cell / side) + uniform(-0.3, 0.3)};
  }

  std::vector<bool> isolated(n, false);
  for (StopId s = 0; s < p.stop_count; ++s) isolated[s] = chance(p.isolated_stop_probability);

  // One lattice step is roughly a two-minute walk.
  auto walk_time = [&](Vertex a, Vertex b) {
    return static_cast<Time>(std::lround(detail::distance(position[a], position[b]) * uniform(100.0, 140.0)));
  };
  std::vector<Edge> edges;
  auto link = [&](Vertex a, Vertex b) {
    if (a == kNoVertex || b == kNoVertex || isolated[a] || isolated[b] || !chance(p.edge_density)) return;
    const Time w = chance(p.zero_edge_probability) ? 0 : walk_time(a, b);
    const bool one_way = chance(p.one_way_probability);
    const bool forward = chance(0.5);
    if (!one_way || forward) edges.push_back({a, b, scale_transfer_time(w, p.transfer_time_scale)});
    if (!one_way || !forward) edges.push_back({b, a, scale_transfer_time(w, p.transfer_time_scale)});
  };
  for (std::size_t cell = 0; cell < side * side; ++cell) {
    const std::size_t x = cell % side, y = cell / side;
    if (x + 1 < side) link(vertex_of_cell[cell], vertex_of_cell[cell + 1]);
    if (y + 1 < side) link(vertex_of_cell[cell], vertex_of_cell[cell + side]);
    if (x + 1 < side && y + 1 < side && chance(0.2)) link(vertex_of_cell[cell], vertex_of_cell[cell + side + 1]);
  }

  std::vector<Stop> stops(p.stop_count);
  for (Stop& s : stops) s.buffer_time = p.max_buffer > 0 ? static_cast<Time>(pick(p.max_buffer / 30 + 1)) * 30 : 0;

  auto on_grid = [&](double t) {
    return std::max<Time>(p.time_grid, static_cast<Time>(std::lround(t / p.time_grid)) * p.time_grid);
  };
  std::vector<Trip> trips;
  for (std::size_t r = 0; r < p.route_count; ++r) {
    // Stop sequence: each hop goes to one of the nearest unused stops.
    const std::size_t length = 2 + pick(std::max<std::size_t>(1, std::min(p.max_route_length, p.stop_count) - 1));
    std::vector<StopId> sequence{static_cast<StopId>(pick(p.stop_count))};
    std::vector<bool> used(p.stop_count, false);
    used[sequence[0]] = true;
    while (sequence.size() < length) {
      std::vector<std::pair<double, StopId>> near;
      for (StopId s = 0; s < p.stop_count; ++s) {
        if (!used[s]) near.push_back({detail::distance(position[sequence.back()], position[s]), s});
      }
      if (near.empty()) break;
      const std::size_t keep = std::min<std::size_t>(3, near.size());
      std::partial_sort(near.begin(), near.begin() + keep, near.end());
      const StopId next = near[pick(keep)].second;
      used[next] = true;
      sequence.push_back(next);
    }
    std::vector<Time> ride(sequence.size(), 0);
    for (std::size_t i = 1; i < sequence.size(); ++i) {
      ride[i] = on_grid(detail::distance(position[sequence[i - 1]], position[sequence[i]]) * uniform(20.0, 60.0));
    }
    const Time dwell = chance(0.5) ? 0 : p.time_grid;
    for (std::size_t k = 0; k < p.trips_per_route; ++k) {
      Trip trip;
      trip.stops = sequence;
      Time now = p.service_start + on_grid(uniform(0.0, static_cast<double>(p.service_span)));
      const bool jitter = chance(p.jitter_probability);
      for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i > 0) {
          now += ride[i];
          if (jitter) now += static_cast<Time>(pick(3)) * p.time_grid - (ride[i] > p.time_grid ? p.time_grid : 0);
        }
        trip.arrivals.push_back(now);
        if (i > 0 && i + 1 < sequence.size()) now += dwell;
        trip.departures.push_back(now);
      }
      trips.push_back(std::move(trip));
    }
  }
  return Network::create(std::move(stops), std::move(trips), TransferGraph(n, std::move(edges)), p.horizon);
}

// Parameters of the random small instances used by the property suites.
inline GeneratorParams small_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  auto between = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  GeneratorParams p;
  p.seed = seed;
  p.stop_count = between(5, 50);
  p.extra_vertices = between(0, 100);
  p.edge_density = std::array<double, 4>{0.0, 0.4, 0.7, 0.95}[rng() % 4];
  p.isolated_stop_probability = std::array<double, 3>{0.0, 0.1, 0.3}[rng() % 3];
  p.zero_edge_probability = std::array<double, 3>{0.0, 0.05, 0.2}[rng() % 3];
  p.route_count = between(2, 3 + p.stop_count / 2);
  p.trips_per_route = between(1, 10);
  p.max_route_length = between(2, 8);
  p.service_span = static_cast<Time>(between(1, 3)) * 3600;
  p.max_buffer = std::array<Time, 3>{0, 60, 180}[rng() % 3];
  return p;
}

// About 2,000 stops, 20,000 vertices and 5,000 trips.
inline GeneratorParams medium_instance(std::uint64_t seed = 2024) {
  GeneratorParams p;
  p.seed = seed;
  p.stop_count = 2000;
  p.extra_vertices = 18000;
  p.edge_density = 0.8;
  p.zero_edge_probability = 0.01;
  p.isolated_stop_probability = 0.02;
  p.route_count = 250;
  p.trips_per_route = 20;
  p.max_route_length = 15;
  p.service_start = 5 * 3600;
  p.service_span = 16 * 3600;
  p.max_buffer = 120;
  return p;
}

}  // namespace ultra::oracle
