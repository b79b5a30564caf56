#pragma once

#include <algorithm>
#include <vector>

#include "ultra/graph/indexed_heap.hpp"
#include "ultra/query/result.hpp"
#include "ultra/transit/journey.hpp"
#include "ultra/transit/network.hpp"

namespace ultra::detail {

inline constexpr std::size_t kMaxRounds = 30;

// Arrival at a stop by the trip of one round.
struct TripParent {
  Time arrival = kInfinity;
  RouteId route = 0;
  std::uint32_t trip_index = 0;
  std::uint32_t board = 0;
  std::uint32_t alight = 0;
};

// How the label of a vertex in one round came about. Transfer labels point
// at the stop whose trip arrival of the same round they start from.
struct LabelParent {
  enum Kind : std::uint8_t { Init, Trip, Transfer };
  Kind kind = Init;
  Time arrival = kInfinity;
  Vertex from = kNoVertex;
};

// Final transfer into the target: from the trip arrival at `root` in the
// label's round, or straight from the source in round 0.
struct TargetParent {
  Time arrival = kInfinity;
  Vertex root = kNoVertex;
};

// Round-indexed labels shared by the RAPTOR-style engines. best() holds the
// earliest arrival with any number of trips so far; previous() is the value
// before the current round, which is what boarding has to use.
class RaptorState {
 public:
  void prepare(const Network& net, std::size_t vertex_count) {
    net_ = &net;
    if (best_.size() != vertex_count) {
      best_.resize(vertex_count, kInfinity);
      previous_.resize(vertex_count, kInfinity);
      marked_.resize(vertex_count, 0);
      labels_.clear();
      trips_.clear();
    }
    if (route_first_.size() != net.routes().size()) {
      route_first_.resize(net.routes().size(), 0);
      route_seen_.resize(net.routes().size(), 0);
    }
  }

  void start(Vertex source, Vertex target, Time departure) {
    source_ = source;
    target_ = target;
    departure_ = departure;
    round_ = 0;
    best_.reset();
    previous_.reset();
    ensure_round(0);
    labels_[0].reset();
    trips_[0].reset();
    targets_.assign(1, TargetParent{});
    target_best_ = kInfinity;
    round_start_target_ = kInfinity;
    marked_list_.clear();
    trip_updated_.clear();
    ++mark_generation_;
  }

  // Opens round k: the stops updated in round k-1 become the routes to scan.
  void begin_round() {
    ++round_;
    ensure_round(round_);
    labels_[round_].reset();
    trips_[round_].reset();
    previous_.reset();
    targets_.push_back(TargetParent{});
    round_start_target_ = target_best_;
    scan_list_.swap(marked_list_);
    marked_list_.clear();
    trip_updated_.clear();
    ++mark_generation_;
  }

  // Opens the next round if the last one marked stops and the cap allows it.
  bool next_round(std::size_t max_rounds) {
    if (marked_list_.empty()) return false;
    if (round_ >= max_rounds) {
      if (max_rounds >= kMaxRounds) throw InternalError("round cap reached while labels still improve");
      return false;
    }
    begin_round();
    return true;
  }

  std::size_t round() const noexcept { return round_; }
  Time departure() const noexcept { return departure_; }
  Vertex source() const noexcept { return source_; }
  Vertex target() const noexcept { return target_; }
  Time best(Vertex v) const noexcept { return best_[v]; }
  Time previous(Vertex v) const noexcept { return previous_.is_set(v) ? previous_[v] : best_[v]; }
  Time target_best() const noexcept { return target_best_; }
  bool target_improved() const noexcept { return target_best_ < round_start_target_; }
  std::span<const Vertex> marked() const noexcept { return marked_list_; }
  std::span<const Vertex> scanned_from() const noexcept { return scan_list_; }
  const TripParent& trip(std::size_t k, Vertex v) const noexcept { return trips_[k][v]; }
  bool has_trip(std::size_t k, Vertex v) const noexcept { return trips_[k].is_set(v); }

  // Sets a label of the current round if it beats best(). Stops get marked.
  bool improve(Vertex v, Time arrival, LabelParent parent) {
    if (arrival >= best_[v]) return false;
    if (!previous_.is_set(v)) previous_.set(v, best_[v]);
    best_.set(v, arrival);
    parent.arrival = arrival;
    labels_[round_].set(v, parent);
    if (net_->is_stop(v) && marked_[v] != mark_generation_) {
      marked_[v] = mark_generation_;
      marked_list_.push_back(v);
    }
    return true;
  }

  void record_trip(Vertex stop, const TripParent& parent) { trips_[round_].set(stop, parent); }

  bool improve_target(Time arrival, Vertex root) {
    if (arrival >= target_best_) return false;
    target_best_ = arrival;
    targets_[round_] = TargetParent{arrival, root};
    return true;
  }

  // Root stop of a label in round k: the stop itself for trip labels.
  Vertex root_of(std::size_t k, Vertex v) const noexcept {
    const LabelParent& p = labels_[k][v];
    return p.kind == LabelParent::Transfer ? p.from : v;
  }

  const LabelParent& label(std::size_t k, Vertex v) const noexcept { return labels_[k][v]; }
  bool has_label(std::size_t k, Vertex v) const noexcept { return labels_[k].is_set(v); }

  // Routes through the stops marked in the previous round, each with the
  // first position to scan from, in ascending route order.
  const std::vector<std::pair<RouteId, std::uint32_t>>& collect_routes() {
    ++route_generation_;
    collected_.clear();
    for (const Vertex v : scan_list_) {
      for (const RouteStop& rs : net_->routes_at(v)) {
        if (route_seen_[rs.route] != route_generation_) {
          route_seen_[rs.route] = route_generation_;
          route_first_[rs.route] = rs.position;
          collected_.push_back({rs.route, 0});
        } else {
          route_first_[rs.route] = std::min(route_first_[rs.route], rs.position);
        }
      }
    }
    for (auto& [r, first] : collected_) first = route_first_[r];
    std::sort(collected_.begin(), collected_.end());
    return collected_;
  }

  // Scans one route from `first`. Each improved arrival is reported to
  // on_arrival(stop, arrival) after it was stored; arrivals not below
  // target_best() are pruned.
  template <typename OnArrival>
  void scan_route(RouteId r, std::uint32_t first, OnArrival on_arrival) {
    const Route& route = net_->route(r);
    const std::size_t none = route.trip_count();
    std::size_t k = none;
    std::uint32_t board = 0;
    for (std::uint32_t i = first; i < route.size(); ++i) {
      const StopId v = route.stops[i];
      if (k != none) {
        const Time arrival = route.event(k, i).arrival;
        if (arrival < target_best_ && improve(v, arrival, LabelParent{LabelParent::Trip, arrival, v})) {
          record_trip(v, TripParent{arrival, r, static_cast<std::uint32_t>(k), board, i});
          trip_updated_.push_back(v);
          on_arrival(v, arrival);
        }
      }
      if (i + 1 == route.size()) break;
      const Time ready = add_time(previous(v), net_->buffer(v));
      if (!is_finite(ready)) continue;
      const std::size_t earliest = route.earliest_trip(i, ready);
      if (earliest < k) {
        k = earliest;
        board = i;
      }
    }
  }

  // Stops whose trip arrival improved in the current round.
  std::vector<Vertex>& trip_updated() noexcept { return trip_updated_; }

  void add_label_if_improved(QueryResult& result) const {
    if (round_ == 0 ? is_finite(target_best_) : target_improved()) {
      result.labels.push_back(ParetoLabel{departure_, target_best_, static_cast<std::uint32_t>(round_)});
    }
  }

  // Walks the parents back from the target label with k trips.
  Journey journey(std::size_t k) const {
    if (k >= targets_.size() || !is_finite(targets_[k].arrival)) throw InternalError("no target label for round");
    const TargetParent& tp = targets_[k];
    Journey j;
    j.depart_at = departure_;
    if (k == 0) {
      j.transfers.push_back(Transfer{source_, target_, tp.arrival - departure_});
      return j;
    }
    std::vector<Transfer> transfers;
    std::vector<TripLeg> legs;
    Vertex x = tp.root;
    if (!has_trip(k, x)) throw InternalError("target parent has no trip arrival");
    transfers.push_back(Transfer{x, target_, tp.arrival - trips_[k][x].arrival});
    std::size_t round = k;
    while (true) {
      if (!has_trip(round, x)) throw InternalError("broken parent chain");
      const TripParent& t = trips_[round][x];
      const Route& route = net_->route(t.route);
      legs.push_back(TripLeg{route.trips[t.trip_index], t.board, t.alight});
      const Vertex b = route.stops[t.board];
      std::size_t j_round = round;
      while (j_round > 0 && !has_label(j_round - 1, b)) --j_round;
      if (j_round == 0) throw InternalError("boarding label missing");
      --j_round;
      const LabelParent& p = labels_[j_round][b];
      if (p.kind == LabelParent::Init) {
        transfers.push_back(Transfer{source_, b, p.arrival - departure_});
        break;
      }
      if (p.kind == LabelParent::Trip) {
        transfers.push_back(Transfer{b, b, 0});
        x = b;
      } else {
        if (!has_trip(j_round, p.from)) throw InternalError("transfer parent has no trip arrival");
        transfers.push_back(Transfer{p.from, b, p.arrival - trips_[j_round][p.from].arrival});
        x = p.from;
      }
      round = j_round;
      if (round == 0) throw InternalError("trip label in round 0");
    }
    std::reverse(transfers.begin(), transfers.end());
    std::reverse(legs.begin(), legs.end());
    j.transfers = std::move(transfers);
    j.legs = std::move(legs);
    return j;
  }

  void fill_journeys(QueryResult& result) const {
    result.journeys.clear();
    for (const ParetoLabel& l : result.labels) result.journeys.push_back(journey(l.trips));
  }

 private:
  void ensure_round(std::size_t k) {
    while (labels_.size() <= k) {
      labels_.emplace_back(best_.size(), LabelParent{});
      trips_.emplace_back(best_.size(), TripParent{});
    }
  }

  const Network* net_ = nullptr;
  Vertex source_ = 0;
  Vertex target_ = 0;
  Time departure_ = 0;
  std::size_t round_ = 0;
  StampedArray<Time> best_;
  StampedArray<Time> previous_;
  std::vector<StampedArray<LabelParent>> labels_;
  std::vector<StampedArray<TripParent>> trips_;
  std::vector<TargetParent> targets_;
  Time target_best_ = kInfinity;
  Time round_start_target_ = kInfinity;
  std::vector<std::uint32_t> marked_;
  std::uint32_t mark_generation_ = 0;
  std::vector<Vertex> marked_list_;
  std::vector<Vertex> scan_list_;
  std::vector<Vertex> trip_updated_;
  std::vector<std::uint32_t> route_first_;
  std::vector<std::uint32_t> route_seen_;
  std::uint32_t route_generation_ = 0;
  std::vector<std::pair<RouteId, std::uint32_t>> collected_;
};

}  // namespace ultra::detail
