#pragma once

#include <algorithm>
#include <vector>

#include "ultra/graph/indexed_heap.hpp"
#include "ultra/query/connections.hpp"
#include "ultra/query/result.hpp"

namespace ultra::detail {

struct CsaLabel {
  enum Kind : std::uint8_t { Init, Trip, Transfer };
  Kind kind = Init;
  Vertex from = kNoVertex;  // root stop of a transfer
};

// Earliest arrival at a stop by a trip, with the connections it was entered
// and left at.
struct CsaTripArrival {
  Time arrival = kInfinity;
  std::uint32_t enter = 0;
  std::uint32_t exit = 0;
};

// Labels of one connection scan. A stop's overall arrival and its arrival by
// trip are kept apart: transfers between trips start from the latter.
class CsaState {
 public:
  static constexpr std::uint32_t kNotEntered = std::numeric_limits<std::uint32_t>::max();

  void prepare(const Network& net, const ConnectionArray& connections, std::size_t vertex_count) {
    net_ = &net;
    connections_ = &connections;
    arrival_.resize(vertex_count, kInfinity);
    label_.resize(vertex_count, CsaLabel{});
    trip_arrival_.resize(net.stop_count(), CsaTripArrival{});
    entered_.resize(net.trips().size(), kNotEntered);
  }

  void start(Vertex s, Vertex t, Time departure) {
    source_ = s;
    target_ = t;
    departure_ = departure;
    arrival_.reset();
    label_.reset();
    trip_arrival_.reset();
    entered_.reset();
    target_best_ = kInfinity;
    target_root_ = kNoVertex;
  }

  Time arrival(Vertex v) const noexcept { return arrival_[v]; }
  Time trip_arrival(StopId v) const noexcept { return trip_arrival_[v].arrival; }
  Time target_best() const noexcept { return target_best_; }

  bool improve(Vertex v, Time arrival, CsaLabel label) {
    if (arrival >= arrival_[v]) return false;
    arrival_.set(v, arrival);
    label_.set(v, label);
    return true;
  }

  // Root stop of v's label, kNoVertex for labels straight from the source.
  Vertex root_of(Vertex v) const noexcept {
    const CsaLabel& l = label_[v];
    return l.kind == CsaLabel::Init ? kNoVertex : l.kind == CsaLabel::Trip ? v : l.from;
  }

  bool improve_target(Time arrival, Vertex root) {
    if (arrival >= target_best_) return false;
    target_best_ = arrival;
    target_root_ = root;
    return true;
  }

  // Scans connection i. Returns true if it improved the trip arrival at its
  // arrival stop.
  bool scan(std::size_t i) {
    const Connection& c = (*connections_)[i];
    std::uint32_t& entered = entered_.ref(c.trip);
    if (entered == kNotEntered) {
      if (add_time(arrival_[c.dep_stop], net_->buffer(c.dep_stop)) > c.dep_time) return false;
      entered = static_cast<std::uint32_t>(i);
    }
    if (c.arr_time >= trip_arrival_[c.arr_stop].arrival) return false;
    trip_arrival_.set(c.arr_stop, CsaTripArrival{c.arr_time, entered, static_cast<std::uint32_t>(i)});
    return true;
  }

  // Journey to the target label; throws InternalError on a broken chain.
  Journey journey() const {
    if (!is_finite(target_best_)) throw InternalError("no target label");
    Journey j;
    j.depart_at = departure_;
    if (target_root_ == kNoVertex) {
      j.transfers.push_back(Transfer{source_, target_, target_best_ - departure_});
      return j;
    }
    std::vector<Transfer> transfers;
    std::vector<TripLeg> legs;
    Vertex x = target_root_;
    transfers.push_back(Transfer{x, target_, target_best_ - trip_arrival_[x].arrival});
    for (std::size_t guard = 0;; ++guard) {
      if (guard > net_->trips().size() || !trip_arrival_.is_set(x)) throw InternalError("broken parent chain");
      const CsaTripArrival& ta = trip_arrival_[x];
      const Connection& enter = (*connections_)[ta.enter];
      const Connection& exit = (*connections_)[ta.exit];
      if (enter.trip != exit.trip || exit.arr_stop != x) throw InternalError("inconsistent trip parent");
      legs.push_back(TripLeg{enter.trip, enter.position, exit.position + 1});
      const StopId b = enter.dep_stop;
      if (!label_.is_set(b)) throw InternalError("boarding stop has no label");
      const CsaLabel& l = label_[b];
      if (l.kind == CsaLabel::Init) {
        transfers.push_back(Transfer{source_, b, arrival_[b] - departure_});
        break;
      }
      if (l.kind == CsaLabel::Trip) {
        transfers.push_back(Transfer{b, b, 0});
        x = b;
      } else {
        if (!trip_arrival_.is_set(l.from)) throw InternalError("transfer root has no trip arrival");
        transfers.push_back(Transfer{l.from, b, arrival_[b] - trip_arrival_[l.from].arrival});
        x = l.from;
      }
    }
    std::reverse(transfers.begin(), transfers.end());
    std::reverse(legs.begin(), legs.end());
    j.transfers = std::move(transfers);
    j.legs = std::move(legs);
    return j;
  }

  void fill(ArrivalResult& result, const QueryOptions& options) const {
    result.reachable = is_finite(target_best_);
    result.label = ParetoLabel{departure_, target_best_, 0};
    if (!result.reachable) return;
    Journey j = journey();
    result.label.trips = static_cast<std::uint32_t>(j.trip_count());
    if (options.journeys) result.journey = std::move(j);
  }

 private:
  const Network* net_ = nullptr;
  const ConnectionArray* connections_ = nullptr;
  Vertex source_ = 0;
  Vertex target_ = 0;
  Time departure_ = 0;
  StampedArray<Time> arrival_;
  StampedArray<CsaLabel> label_;
  StampedArray<CsaTripArrival> trip_arrival_;
  StampedArray<std::uint32_t> entered_;
  Time target_best_ = kInfinity;
  Vertex target_root_ = kNoVertex;
};

}  // namespace ultra::detail
