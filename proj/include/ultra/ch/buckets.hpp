#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "ultra/ch/contraction.hpp"
#include "ultra/graph/dijkstra.hpp"
#include "ultra/graph/indexed_heap.hpp"

namespace ultra {

struct BucketEntry {
  Vertex target;
  Time distance;

  friend bool operator==(const BucketEntry&, const BucketEntry&) = default;
};

// ToTargets buckets answer one-to-many queries d(s, targets): every target is
// stored in the buckets of its reverse upward search space. FromTargets
// buckets answer many-to-one queries d(targets, t) by storing each target in
// its forward upward search space, i.e. the same scheme on the reversed graph.
enum class BucketDirection { ToTargets, FromTargets };

class BucketStore {
 public:
  BucketStore() : offsets_(1, 0) {}

  BucketStore(std::size_t vertex_count, std::size_t target_space, std::vector<std::pair<Vertex, BucketEntry>> items)
      : offsets_(vertex_count + 1, 0), target_space_(target_space) {
    for (const auto& [v, e] : items) ++offsets_[v + 1];
    for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] += offsets_[v];
    entries_.resize(items.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [v, e] : items) entries_[fill[v]++] = e;
    for (std::size_t v = 0; v < vertex_count; ++v) {
      std::sort(entries_.begin() + offsets_[v], entries_.begin() + offsets_[v + 1],
                [](const BucketEntry& a, const BucketEntry& b) {
                  return a.distance != b.distance ? a.distance < b.distance : a.target < b.target;
                });
    }
  }

  std::span<const BucketEntry> at(Vertex v) const noexcept {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  // Target ids are below this bound.
  std::size_t target_space() const noexcept { return target_space_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<BucketEntry> entries_;
  std::size_t target_space_ = 0;
};

namespace detail {

inline const StaticGraph& query_side(const ContractionHierarchy& ch, BucketDirection d) {
  return d == BucketDirection::ToTargets ? ch.up_out : ch.up_in;
}

inline const StaticGraph& target_side(const ContractionHierarchy& ch, BucketDirection d) {
  return d == BucketDirection::ToTargets ? ch.up_in : ch.up_out;
}

}  // namespace detail

namespace detail {

// Upward Dijkstra with stall-on-demand: a settled vertex whose distance can be
// beaten through a higher neighbour already seen (via `down`) is neither
// relaxed nor reported. Reported distances are exact.
class StalledUpwardSearch {
 public:
  StalledUpwardSearch(const StaticGraph& up, const StaticGraph& down)
      : up_(&up), down_(&down), heap_(up.vertex_count()), distance_(up.vertex_count(), kInfinity) {}

  template <typename OnSettle>
  void run(Vertex source, OnSettle on_settle) {
    heap_.clear();
    distance_.reset();
    distance_.set(source, 0);
    heap_.push_or_decrease(source, 0);
    while (!heap_.empty()) {
      const Time du = heap_.min_key();
      const Vertex u = heap_.pop();
      if (stalled(u, du, distance_, *down_)) continue;
      on_settle(u, du);
      for (const Arc& a : up_->out(u)) {
        const Time d = add_time(du, a.weight);
        if (d < distance_[a.head]) {
          distance_.set(a.head, d);
          heap_.push_or_decrease(a.head, d);
        }
      }
    }
  }

  static bool stalled(Vertex u, Time du, const StampedArray<Time>& distance, const StaticGraph& down) noexcept {
    for (const Arc& a : down.out(u)) {
      if (add_time(distance[a.head], a.weight) < du) return true;
    }
    return false;
  }

 private:
  const StaticGraph* up_;
  const StaticGraph* down_;
  IndexedHeap heap_;
  StampedArray<Time> distance_;
};

}  // namespace detail

inline BucketStore build_buckets(const ContractionHierarchy& ch, std::span<const Vertex> targets,
                                 BucketDirection direction) {
  std::size_t space = 0;
  for (const Vertex t : targets) {
    if (t >= ch.vertex_count()) throw ContractViolation("bucket target out of range");
    space = std::max<std::size_t>(space, t + 1);
  }
  std::vector<std::pair<Vertex, BucketEntry>> items;
  detail::StalledUpwardSearch search(detail::target_side(ch, direction), detail::query_side(ch, direction));
  for (const Vertex t : targets) {
    search.run(t, [&](Vertex v, Time d) { items.push_back({v, BucketEntry{t, d}}); });
  }
  return BucketStore(ch.vertex_count(), space, std::move(items));
}

// Exact distances between `source` and every bucket target, kInfinity where
// unreachable. Direction must match the one the buckets were built with.
inline std::vector<Time> bucket_query(const ContractionHierarchy& ch, const BucketStore& buckets, Vertex source,
                                      BucketDirection direction) {
  std::vector<Time> result(buckets.target_space(), kInfinity);
  DijkstraSearch search(detail::query_side(ch, direction));
  search.run(source);
  for (const Vertex v : search.settled_order()) {
    const Time dv = search.distance(v);
    for (const BucketEntry& e : buckets.at(v)) result[e.target] = std::min(result[e.target], add_time(dv, e.distance));
  }
  return result;
}

// Bidirectional point-to-point query on a full hierarchy.
inline Time ch_distance(const ContractionHierarchy& ch, Vertex s, Vertex t) {
  const auto forward = dijkstra(ch.up_out, s);
  const auto backward = dijkstra(ch.up_in, t);
  Time best = kInfinity;
  for (std::size_t v = 0; v < ch.vertex_count(); ++v) {
    best = std::min(best, add_time(forward.distance[v], backward.distance[v]));
  }
  return best;
}

// Reusable workspace for the pruned query: a bidirectional search that stops
// at the s-t distance, followed by bucket scans over both partial search
// spaces that stop at the first entry no longer closer than d(s,t).
class PrunedPairQuery {
 public:
  struct Result {
    Time distance = kInfinity;
    std::span<const Vertex> forward_targets;   // stops v with d(s,v) < distance
    std::span<const Vertex> backward_targets;  // stops u with d(u,t) < distance
  };

  PrunedPairQuery(const ContractionHierarchy& ch, const BucketStore& forward, const BucketStore& backward)
      : ch_(&ch),
        forward_buckets_(&forward),
        backward_buckets_(&backward),
        heap_{IndexedHeap(ch.vertex_count()), IndexedHeap(ch.vertex_count())},
        distance_{StampedArray<Time>(ch.vertex_count(), kInfinity), StampedArray<Time>(ch.vertex_count(), kInfinity)},
        to_target_(forward.target_space(), kInfinity),
        from_target_(backward.target_space(), kInfinity) {}

  Result run(Vertex s, Vertex t) {
    for (int side = 0; side < 2; ++side) {
      heap_[side].clear();
      distance_[side].reset();
      settled_[side].clear();
    }
    for (const Vertex v : forward_list_) to_target_[v] = kInfinity;
    for (const Vertex u : backward_list_) from_target_[u] = kInfinity;
    forward_list_.clear();
    backward_list_.clear();

    distance_[0].set(s, 0);
    heap_[0].push_or_decrease(s, 0);
    distance_[1].set(t, 0);
    heap_[1].push_or_decrease(t, 0);
    Time mu = kInfinity;
    const StaticGraph* graphs[2] = {&ch_->up_out, &ch_->up_in};
    int side = 0;
    while (true) {
      const bool open0 = heap_[0].min_key() < mu, open1 = heap_[1].min_key() < mu;
      if (!open0 && !open1) break;
      if (!open0) side = 1;
      else if (!open1) side = 0;
      const Time du = heap_[side].min_key();
      const Vertex u = heap_[side].pop();
      mu = std::min(mu, add_time(du, distance_[1 - side][u]));
      if (detail::StalledUpwardSearch::stalled(u, du, distance_[side], *graphs[1 - side])) {
        side = 1 - side;
        continue;
      }
      settled_[side].push_back(u);
      for (const Arc& a : graphs[side]->out(u)) {
        const Time d = add_time(du, a.weight);
        if (d < distance_[side][a.head]) {
          distance_[side].set(a.head, d);
          heap_[side].push_or_decrease(a.head, d);
          mu = std::min(mu, add_time(d, distance_[1 - side][a.head]));
        }
      }
      side = 1 - side;
    }

    scan(settled_[0], distance_[0], *forward_buckets_, mu, to_target_, forward_list_);
    scan(settled_[1], distance_[1], *backward_buckets_, mu, from_target_, backward_list_);
    return Result{mu, forward_list_, backward_list_};
  }

  // Valid for targets listed in the last result; kInfinity otherwise.
  Time to_target(Vertex v) const noexcept { return v < to_target_.size() ? to_target_[v] : kInfinity; }
  Time from_target(Vertex u) const noexcept { return u < from_target_.size() ? from_target_[u] : kInfinity; }

 private:
  // Buckets hold each target at many vertices, so the minimum is kept without
  // branching and the touched targets are collected afterwards.
  static void scan(std::span<const Vertex> settled, const StampedArray<Time>& distance, const BucketStore& buckets,
                   Time mu, std::vector<Time>& out, std::vector<Vertex>& list) {
    Time* best = out.data();
    for (const Vertex v : settled) {
      const Time dv = distance[v];
      if (dv >= mu) continue;
      const Time limit = mu - dv;
      for (const BucketEntry& e : buckets.at(v)) {
        if (e.distance >= limit) break;
        best[e.target] = std::min(best[e.target], dv + e.distance);
      }
    }
    for (Vertex v = 0; v < out.size(); ++v) {
      if (best[v] != kInfinity) list.push_back(v);
    }
  }

  const ContractionHierarchy* ch_;
  const BucketStore* forward_buckets_;
  const BucketStore* backward_buckets_;
  IndexedHeap heap_[2];
  StampedArray<Time> distance_[2];
  std::vector<Vertex> settled_[2];
  std::vector<Time> to_target_;  // kInfinity outside the current lists
  std::vector<Time> from_target_;
  std::vector<Vertex> forward_list_;
  std::vector<Vertex> backward_list_;
};

}  // namespace ultra
