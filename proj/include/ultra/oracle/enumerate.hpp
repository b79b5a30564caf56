#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "ultra/transit/journey.hpp"
#include "ultra/transit/network.hpp"

// Ground truth for tests. Deliberately shares nothing with the engines apart
// from the transit model: its own Dijkstra, a brute-force scan over every
// trip in every round and all-pairs transfer distances.
namespace ultra::oracle {

class TransferDistances {
 public:
  explicit TransferDistances(const Network& net) : n_(net.vertex_count()) {
    std::vector<std::vector<std::pair<Vertex, Time>>> adjacency(n_);
    for (const Edge& e : net.graph().edges()) adjacency[e.from].push_back({e.to, e.weight});
    distance_.assign(n_ * n_, kInfinity);
    parent_.assign(n_ * n_, kNoVertex);
    using Item = std::pair<Time, Vertex>;
    for (Vertex s = 0; s < n_; ++s) {
      Time* d = &distance_[s * n_];
      Vertex* parent = &parent_[s * n_];
      std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
      d[s] = 0;
      queue.push({0, s});
      while (!queue.empty()) {
        const auto [du, u] = queue.top();
        queue.pop();
        if (du != d[u]) continue;
        for (const auto& [v, w] : adjacency[u]) {
          if (du + w < d[v]) {
            d[v] = du + w;
            parent[v] = u;
            queue.push({d[v], v});
          }
        }
      }
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  Time operator()(Vertex u, Vertex v) const noexcept { return distance_[u * n_ + v]; }

  // Vertices of a shortest u-v path, empty when unreachable.
  std::vector<Vertex> path(Vertex u, Vertex v) const {
    if (distance_[u * n_ + v] == kInfinity) return {};
    std::vector<Vertex> p{v};
    while (p.back() != u) p.push_back(parent_[u * n_ + p.back()]);
    std::reverse(p.begin(), p.end());
    return p;
  }

 private:
  std::size_t n_;
  std::vector<Time> distance_;
  std::vector<Vertex> parent_;
};

inline Time plus(Time a, Time b) { return a == kInfinity || b == kInfinity ? kInfinity : a + b; }

// best[k][v]: earliest arrival at v using at most k trips.
struct RoundTable {
  Vertex source = 0;
  Time departure = 0;
  std::vector<std::vector<Time>> best;
  bool converged = false;  // a round without improvement was reached

  // Pareto set at t: one label per trip count where the arrival improves.
  std::vector<ParetoLabel> pareto(Vertex t) const {
    std::vector<ParetoLabel> labels;
    Time previous = kInfinity;
    for (std::uint32_t k = 0; k < best.size(); ++k) {
      if (best[k][t] < previous) {
        labels.push_back({departure, best[k][t], k});
        previous = best[k][t];
      }
    }
    return labels;
  }

  Time earliest_arrival(Vertex t) const { return best.empty() ? kInfinity : best.back()[t]; }
};

class Oracle {
 public:
  explicit Oracle(const Network& net, std::size_t max_trips = 8)
      : net_(&net), distances_(net), max_trips_(max_trips) {}

  const TransferDistances& distances() const noexcept { return distances_; }

  // Full transfer graph everywhere.
  RoundTable one_to_all(Vertex s, Time departure) const {
    Search search(*this, s, departure);
    search.run_full();
    return std::move(search.table);
  }

  std::vector<ParetoLabel> pareto(Vertex s, Vertex t, Time departure) const {
    return one_to_all(s, departure).pareto(t);
  }

  // Same as pareto() with a journey per label, transfers along shortest paths.
  std::vector<std::pair<ParetoLabel, Journey>> pareto_journeys(Vertex s, Vertex t, Time departure) const {
    Search search(*this, s, departure);
    search.run_full();
    std::vector<std::pair<ParetoLabel, Journey>> result;
    for (const ParetoLabel& label : search.table.pareto(t)) result.push_back({label, search.journey(t, label.trips)});
    return result;
  }

  // Only the transfers a shortcut query may use: initial transfers from s,
  // at most one shortcut edge (or staying) between trips, final transfers to
  // the target. `used` collects the shortcuts on one optimal journey per
  // Pareto label of every target in `targets`.
  RoundTable restricted_one_to_all(Vertex s, Time departure, std::span<const Edge> shortcuts,
                                   std::span<const Vertex> targets = {},
                                   std::vector<std::size_t>* used = nullptr) const {
    Search search(*this, s, departure);
    search.run_restricted(shortcuts);
    if (used != nullptr) {
      for (const Vertex t : targets) {
        for (const ParetoLabel& label : search.table.pareto(t)) search.mark_used(t, label.trips, *used);
      }
    }
    return std::move(search.table);
  }

 private:
  struct Ride {
    TripId trip = 0;
    std::uint32_t board = 0;
    std::uint32_t alight = 0;
  };

  // How a label of round k was obtained.
  struct Parent {
    enum Kind : std::uint8_t { None, Carry, Walk, Shortcut } kind = None;
    Vertex from = kNoVertex;   // alighting stop for Walk and Shortcut
    std::size_t edge = 0;      // shortcut index
  };

  struct Search {
    const Oracle& o;
    const Network& net;
    RoundTable table;
    std::vector<std::vector<Time>> ride;        // ride[k][stop]: arrival by the k-th trip
    std::vector<std::vector<Ride>> ride_parent;
    std::vector<std::vector<Parent>> parent;    // parent[k][v]
    std::span<const Edge> shortcuts;

    Search(const Oracle& oracle, Vertex s, Time departure) : o(oracle), net(*oracle.net_) {
      table.source = s;
      table.departure = departure;
      const std::size_t n = net.vertex_count();
      std::vector<Time> initial(n);
      std::vector<Parent> initial_parent(n);
      for (Vertex v = 0; v < n; ++v) {
        initial[v] = plus(departure, o.distances_(s, v));
        initial_parent[v] = Parent{Parent::Walk, s, 0};
      }
      table.best.push_back(std::move(initial));
      parent.push_back(std::move(initial_parent));
      ride.emplace_back(net.stop_count(), kInfinity);
      ride_parent.emplace_back(net.stop_count());
    }

    // Every trip, boarded at the first stop whose previous-round label plus
    // buffer meets the departure; staying on board needs no buffer.
    void scan_trips(std::size_t k) {
      std::vector<Time> arrivals(net.stop_count(), kInfinity);
      std::vector<Ride> parents(net.stop_count());
      const auto& previous = table.best[k - 1];
      for (TripId id = 0; id < net.trips().size(); ++id) {
        const Trip& trip = net.trip(id);
        bool boarded = false;
        std::uint32_t board = 0;
        for (std::uint32_t i = 0; i < trip.size(); ++i) {
          const StopId v = trip.stops[i];
          if (boarded && trip.arrivals[i] < arrivals[v]) {
            arrivals[v] = trip.arrivals[i];
            parents[v] = Ride{id, board, i};
          }
          if (!boarded && plus(previous[v], net.buffer(v)) <= trip.departures[i]) {
            boarded = true;
            board = i;
          }
        }
      }
      ride.push_back(std::move(arrivals));
      ride_parent.push_back(std::move(parents));
    }

    bool finish_round(std::vector<Time>&& next, std::vector<Parent>&& next_parent) {
      const bool improved = next != table.best.back();
      table.best.push_back(std::move(next));
      parent.push_back(std::move(next_parent));
      return improved;
    }

    void run_full() {
      const std::size_t n = net.vertex_count();
      for (std::size_t k = 1; k <= o.max_trips_; ++k) {
        scan_trips(k);
        std::vector<Time> next = table.best[k - 1];
        std::vector<Parent> next_parent(n, Parent{Parent::Carry});
        for (StopId x = 0; x < net.stop_count(); ++x) {
          if (ride[k][x] == kInfinity) continue;
          for (Vertex u = 0; u < n; ++u) {
            const Time t = plus(ride[k][x], o.distances_(x, u));
            if (t < next[u]) {
              next[u] = t;
              next_parent[u] = Parent{Parent::Walk, x, 0};
            }
          }
        }
        if (!finish_round(std::move(next), std::move(next_parent))) {
          table.converged = true;
          return;
        }
      }
    }

    void run_restricted(std::span<const Edge> edges) {
      shortcuts = edges;
      const std::size_t n = net.vertex_count();
      const std::size_t stops = net.stop_count();
      // Boarding labels at stops; only the initial ones come from walking.
      std::vector<Time> board(table.best[0].begin(), table.best[0].begin() + stops);
      std::vector<std::vector<Time>> board_rounds{board};
      std::vector<std::vector<Parent>> board_parent{std::vector<Parent>(stops, Parent{Parent::Walk, table.source, 0})};
      for (std::size_t k = 1; k <= o.max_trips_; ++k) {
        // scan_trips reads table.best[k-1] at stops: stage the boarding labels.
        std::vector<Time> staged = table.best[k - 1];
        std::copy(board_rounds[k - 1].begin(), board_rounds[k - 1].end(), staged.begin());
        std::swap(staged, table.best[k - 1]);
        scan_trips(k);
        std::swap(staged, table.best[k - 1]);

        std::vector<Time> next_board = board_rounds[k - 1];
        std::vector<Parent> next_board_parent(stops, Parent{Parent::Carry});
        for (StopId x = 0; x < stops; ++x) {
          if (ride[k][x] < next_board[x]) {
            next_board[x] = ride[k][x];
            next_board_parent[x] = Parent{Parent::Walk, x, 0};
          }
        }
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const Time t = plus(ride[k][edges[e].from], edges[e].weight);
          if (t < next_board[edges[e].to]) {
            next_board[edges[e].to] = t;
            next_board_parent[edges[e].to] = Parent{Parent::Shortcut, edges[e].from, e};
          }
        }

        std::vector<Time> next = table.best[k - 1];
        std::vector<Parent> next_parent(n, Parent{Parent::Carry});
        for (StopId x = 0; x < stops; ++x) {
          if (ride[k][x] == kInfinity) continue;
          for (Vertex u = 0; u < n; ++u) {
            const Time t = plus(ride[k][x], o.distances_(x, u));
            if (t < next[u]) {
              next[u] = t;
              next_parent[u] = Parent{Parent::Walk, x, 0};
            }
          }
        }
        const bool boarding_changed = next_board != board_rounds.back();
        board_rounds.push_back(std::move(next_board));
        board_parent.push_back(std::move(next_board_parent));
        const bool improved = finish_round(std::move(next), std::move(next_parent));
        if (!improved && !boarding_changed) {
          table.converged = true;
          break;
        }
      }
      restricted_board_parent = std::move(board_parent);
    }

    std::vector<std::vector<Parent>> restricted_board_parent;

    // Walks back from target label (t, k) and records the shortcuts used.
    void mark_used(Vertex t, std::size_t k, std::vector<std::size_t>& used) const {
      Vertex x = parent[k][t].from;  // final transfer starts at the alighting stop
      if (k == 0) return;
      while (k > 0) {
        const Ride& r = ride_parent[k][x];
        StopId b = net.trip(r.trip).stops[r.board];
        --k;
        // Boarding label of round k at b.
        std::size_t level = k;
        while (level > 0 && restricted_board_parent[level][b].kind == Parent::Carry) --level;
        if (level == 0) return;
        const Parent& p = restricted_board_parent[level][b];
        if (p.kind == Parent::Shortcut) used.push_back(p.edge);
        x = p.from;
        k = level;
      }
    }

    Journey journey(Vertex t, std::size_t k) const {
      std::vector<Transfer> transfers;
      std::vector<TripLeg> legs;
      Vertex at = t;
      while (k > 0) {
        while (parent[k][at].kind == Parent::Carry) --k;
        if (k == 0) break;
        const Vertex x = parent[k][at].from;
        transfers.push_back(Transfer{x, at, o.distances_(x, at), o.distances_.path(x, at)});
        const Ride& r = ride_parent[k][x];
        legs.push_back(TripLeg{r.trip, r.board, r.alight});
        at = net.trip(r.trip).stops[r.board];
        --k;
      }
      transfers.push_back(Transfer{table.source, at, o.distances_(table.source, at),
                                   o.distances_.path(table.source, at)});
      std::reverse(transfers.begin(), transfers.end());
      std::reverse(legs.begin(), legs.end());
      return Journey{std::move(transfers), std::move(legs), table.departure};
    }
  };

  const Network* net_;
  TransferDistances distances_;
  std::size_t max_trips_;
};

}  // namespace ultra::oracle
