#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "ultra/graph/dijkstra.hpp"
#include "ultra/graph/indexed_heap.hpp"
#include "ultra/preprocess/zero_groups.hpp"
#include "ultra/transit/network.hpp"

namespace ultra {

struct LegRef {
  TripId trip = 0;
  std::uint32_t board = 0;
  std::uint32_t alight = 0;
};

// The two-trip journey a shortcut was emitted for.
struct ShortcutOrigin {
  Edge shortcut;
  Time departure;  // latest departure at the source group
  LegRef first;
  LegRef second;
};

struct SearchParams {
  Time witness_limit = 900;  // kInfinity: never cut a relaxation short
  bool drop_disconnected_pairs = false;
  bool keep_origins = false;
};

// One worker's state for the shortcut search. Labels are per proxy vertex of
// the merged core. The emitted set survives across sources; it is what makes
// the restricted candidate notion worker-local.
class ShortcutSearch {
 public:
  ShortcutSearch(const Network& net, const ZeroGroups& groups, SearchParams params)
      : net_(&net),
        groups_(&groups),
        params_(params),
        proxy_count_(groups.proxy_count()),
        dist0_(groups.merged),
        round1_(proxy_count_),
        round2_(proxy_count_),
        heap1_(proxy_count_),
        heap2_(proxy_count_),
        marked_(proxy_count_, 0),
        route_stamp_(net.routes().size(), 0),
        first_position_(net.routes().size(), 0) {
    for (RouteId r = 0; r < net.routes().size(); ++r) {
      const Route& route = net.route(r);
      for (std::uint32_t i = 0; i + 1 < route.size(); ++i) {
        for (std::uint32_t k = 0; k < route.trip_count(); ++k) {
          events_.push_back({route.event(k, i).departure, route.stops[i], r});
        }
      }
    }
  }

  // Runs the sweep for every departure at the stops of one proxy.
  void run(Vertex source) {
    source_ = source;
    clear_labels();
    dist0_.run(source);
    sorted_triplets();

    std::size_t next = 0;
    while (next < triplets_.size()) {
      // Everything down to and including the next batch of source
      // triplets with equal key joins the collected routes.
      std::size_t end = next;
      while (end < triplets_.size() && !triplets_[end].at_source) ++end;
      if (end == triplets_.size()) break;
      const Time key = triplets_[end].key;
      while (end < triplets_.size() && triplets_[end].key == key) ++end;
      for (; next < end; ++next) collect(triplets_[next].route);
      iteration(key);
    }
  }

  const std::unordered_map<std::uint64_t, Time>& emitted() const noexcept { return emitted_; }
  const std::vector<ShortcutOrigin>& origins() const noexcept { return origins_; }

  std::vector<Edge> shortcut_edges() const {
    std::vector<Edge> edges;
    edges.reserve(emitted_.size());
    for (const auto& [pair, time] : emitted_) {
      edges.push_back({static_cast<Vertex>(pair >> 32), static_cast<Vertex>(pair & 0xffffffffu), time});
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  }

 private:
  struct Event {
    Time departure;
    StopId stop;
    RouteId route;
  };

  struct Triplet {
    Time key;
    bool at_source;
    RouteId route;
  };

  struct Round1Label {
    Time arrival = kInfinity;
    StopId root = 0;  // alighting stop of the trip
    Time walk = 0;    // transfer time from root
    bool candidate = false;
    LegRef leg;
  };

  struct Round2Label {
    Time arrival = kInfinity;
    bool candidate = false;
    StopId from = 0;
    StopId to = 0;
    Time walk = 0;
    LegRef first;
    LegRef second;
  };

  static std::uint64_t pair_key(StopId u, StopId w) { return (std::uint64_t{u} << 32) | w; }

  Time walk0(Vertex p) const noexcept { return add_time(departure_, dist0_.distance(p)); }
  Time eff1(Vertex p) const noexcept { return std::min(walk0(p), round1_[p].arrival); }
  Time eff2(Vertex p) const noexcept { return std::min(eff1(p), round2_[p].arrival); }

  void clear_labels() {
    std::fill(round1_.begin(), round1_.end(), Round1Label{});
    std::fill(round2_.begin(), round2_.end(), Round2Label{});
    heap1_.clear();
    heap2_.clear();
    collected_.clear();
    ++route_generation_;
  }

  void sorted_triplets() {
    triplets_.clear();
    for (const Event& e : events_) {
      const Vertex p = groups_->proxy[e.stop];
      const Time d = dist0_.distance(p);
      if (!is_finite(d)) continue;
      triplets_.push_back({e.departure - net_->buffer(e.stop) - d, p == source_, e.route});
    }
    // Descending key; on equal keys other stops first so their routes are
    // available as witnesses.
    std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
      if (a.key != b.key) return a.key > b.key;
      if (a.at_source != b.at_source) return !a.at_source;
      return a.route < b.route;
    });
  }

  void collect(RouteId r) {
    if (route_stamp_[r] == route_generation_) return;
    route_stamp_[r] = route_generation_;
    collected_.push_back(r);
  }

  void iteration(Time departure) {
    departure_ = departure;
    ++mark_generation_;
    marked_list_.clear();
    std::sort(collected_.begin(), collected_.end());
    for (const RouteId r : collected_) scan_round1(r);
    collected_.clear();
    ++route_generation_;
    relax_round1();
    scan_round2();
    relax_round2();
  }

  void mark(Vertex p) {
    if (marked_[p] == mark_generation_) return;
    marked_[p] = mark_generation_;
    marked_list_.push_back(p);
  }

  void update1(Vertex p, const Round1Label& label) {
    if (heap1_.contains(p) && round1_[p].candidate) --counter1_;
    round1_[p] = label;
    if (label.candidate) ++counter1_;
    heap1_.push_or_decrease(p, label.arrival);
    mark(p);
  }

  void update2(Vertex p, const Round2Label& label) {
    if (heap2_.contains(p) && round2_[p].candidate) --counter2_;
    round2_[p] = label;
    if (label.candidate) ++counter2_;
    heap2_.push_or_decrease(p, label.arrival);
  }

  void scan_round1(RouteId r) {
    const Route& route = net_->route(r);
    const std::size_t none = route.trip_count();
    std::size_t k = none;
    bool candidate = false;
    std::uint32_t board = 0;
    for (std::uint32_t i = 0; i < route.size(); ++i) {
      const StopId v = route.stops[i];
      const Vertex p = groups_->proxy[v];
      if (k != none) {
        const Time arrival = route.event(k, i).arrival;
        if (arrival < eff1(p)) update1(p, Round1Label{arrival, v, 0, candidate, LegRef{route.trips[k], board, i}});
      }
      if (i + 1 == route.size()) break;
      const Time ready = add_time(walk0(p), net_->buffer(v));
      if (!is_finite(ready)) continue;
      const std::size_t earliest = route.earliest_trip(i, ready);
      if (earliest < k) {
        k = earliest;
        candidate = p == source_;
        board = i;
      }
    }
  }

  // Stop rule shared by both rounds: once no candidate is queued, keep going
  // until the head exceeds the last settled candidate by the witness limit.
  // Without any settled candidate the queue is drained.
  bool should_stop(const IndexedHeap& heap, int counter, bool have_last, Time last) const {
    return counter == 0 && have_last && heap.min_key() > add_time(last, params_.witness_limit);
  }

  void relax_round1() {
    const StaticGraph& g = groups_->merged;
    bool have_last = false;
    Time last = 0;
    while (!heap1_.empty() && !should_stop(heap1_, counter1_, have_last, last)) {
      const Time key = heap1_.min_key();
      const Vertex p = heap1_.pop();
      const Round1Label label = round1_[p];
      if (label.candidate) {
        --counter1_;
        have_last = true;
        last = key;
      }
      for (const Arc& a : g.out(p)) {
        const Time arrival = add_time(label.arrival, a.weight);
        if (arrival < eff1(a.head)) {
          update1(a.head,
                  Round1Label{arrival, label.root, add_time(label.walk, a.weight), label.candidate, label.leg});
        }
      }
    }
  }

  void scan_round2() {
    routes2_.clear();
    for (const Vertex p : marked_list_) {
      for (const StopId v : groups_->stops_of[p]) {
        for (const RouteStop& rs : net_->routes_at(v)) {
          if (route_stamp_[rs.route] != route_generation_) {
            route_stamp_[rs.route] = route_generation_;
            first_position_[rs.route] = rs.position;
            routes2_.push_back(rs.route);
          } else {
            first_position_[rs.route] = std::min(first_position_[rs.route], rs.position);
          }
        }
      }
    }
    ++route_generation_;
    std::sort(routes2_.begin(), routes2_.end());

    for (const RouteId r : routes2_) {
      const Route& route = net_->route(r);
      const std::size_t none = route.trip_count();
      std::size_t k = none;
      Round2Label boarding;
      for (std::uint32_t i = first_position_[r]; i < route.size(); ++i) {
        const StopId v = route.stops[i];
        const Vertex p = groups_->proxy[v];
        if (k != none) {
          const Time arrival = route.event(k, i).arrival;
          if (arrival < eff2(p)) {
            Round2Label label = boarding;
            label.arrival = arrival;
            label.second = LegRef{route.trips[k], label.second.board, i};
            update2(p, label);
          }
        }
        if (i + 1 == route.size()) break;
        const Time ready = add_time(eff1(p), net_->buffer(v));
        if (!is_finite(ready)) continue;
        const std::size_t earliest = route.earliest_trip(i, ready);
        if (earliest < k) {
          k = earliest;
          const Round1Label& via = round1_[p];
          boarding = Round2Label{};
          boarding.second.board = i;
          if (via.arrival < walk0(p)) {
            boarding.candidate =
                via.candidate && via.root != v && !emitted_.contains(pair_key(via.root, v));
            boarding.from = via.root;
            boarding.to = v;
            boarding.walk = via.walk;
            boarding.first = via.leg;
          }
        }
      }
    }
  }

  void relax_round2() {
    const StaticGraph& g = groups_->merged;
    bool have_last = false;
    Time last = 0;
    while (!heap2_.empty() && !should_stop(heap2_, counter2_, have_last, last)) {
      const Time key = heap2_.min_key();
      const Vertex p = heap2_.pop();
      const Round2Label label = round2_[p];
      if (label.candidate) {
        --counter2_;
        have_last = true;
        last = key;
        if (label.arrival < eff1(p)) emit(p, label);
      }
      for (const Arc& a : g.out(p)) {
        const Time arrival = add_time(label.arrival, a.weight);
        if (arrival < eff2(a.head)) {
          Round2Label moved = label;
          moved.arrival = arrival;
          moved.candidate = false;
          update2(a.head, moved);
        }
      }
    }
  }

  void emit(Vertex target, const Round2Label& label) {
    if (params_.drop_disconnected_pairs && !is_finite(dist0_.distance(target))) return;
    const auto [it, inserted] = emitted_.try_emplace(pair_key(label.from, label.to), label.walk);
    if (!inserted) {
      it->second = std::min(it->second, label.walk);
      return;
    }
    if (params_.keep_origins) {
      origins_.push_back(ShortcutOrigin{Edge{label.from, label.to, label.walk}, departure_, label.first, label.second});
    }
  }

  const Network* net_;
  const ZeroGroups* groups_;
  SearchParams params_;
  std::size_t proxy_count_;
  std::vector<Event> events_;

  Vertex source_ = 0;
  Time departure_ = 0;
  DijkstraSearch<StaticGraph> dist0_;
  std::vector<Triplet> triplets_;
  std::vector<Round1Label> round1_;
  std::vector<Round2Label> round2_;
  IndexedHeap heap1_;
  IndexedHeap heap2_;
  int counter1_ = 0;
  int counter2_ = 0;

  std::vector<std::uint32_t> marked_;
  std::uint32_t mark_generation_ = 0;
  std::vector<Vertex> marked_list_;
  std::vector<std::uint32_t> route_stamp_;
  std::uint32_t route_generation_ = 1;
  std::vector<RouteId> collected_;
  std::vector<RouteId> routes2_;
  std::vector<std::uint32_t> first_position_;

  std::unordered_map<std::uint64_t, Time> emitted_;
  std::vector<ShortcutOrigin> origins_;
};

}  // namespace ultra
