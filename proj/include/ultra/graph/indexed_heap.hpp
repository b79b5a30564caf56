#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ultra/types.hpp"

namespace ultra {

// Addressable binary min-heap over dense vertex ids. Ties on the key are
// broken by vertex id so that every search is reproducible.
class IndexedHeap {
 public:
  explicit IndexedHeap(std::size_t n = 0) : pos_(n, kAbsent) {}

  void resize(std::size_t n) {
    clear();
    pos_.assign(n, kAbsent);
  }

  std::size_t capacity() const noexcept { return pos_.size(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  bool contains(Vertex v) const noexcept { return pos_[v] != kAbsent; }
  Time key(Vertex v) const noexcept { return heap_[pos_[v]].first; }

  Vertex top() const noexcept { return heap_.front().second; }
  Time min_key() const noexcept { return heap_.empty() ? kInfinity : heap_.front().first; }

  // Inserts v or lowers its key. Raising a key is not supported.
  void push_or_decrease(Vertex v, Time k) {
    if (pos_[v] == kAbsent) {
      pos_[v] = static_cast<std::uint32_t>(heap_.size());
      heap_.emplace_back(k, v);
      sift_up(pos_[v]);
    } else if (less({k, v}, heap_[pos_[v]])) {
      heap_[pos_[v]].first = k;
      sift_up(pos_[v]);
    }
  }

  Vertex pop() {
    const Vertex v = heap_.front().second;
    remove_at(0);
    return v;
  }

  void erase(Vertex v) {
    if (pos_[v] != kAbsent) remove_at(pos_[v]);
  }

  void clear() noexcept {
    for (const auto& [k, v] : heap_) pos_[v] = kAbsent;
    heap_.clear();
  }

 private:
  using Entry = std::pair<Time, Vertex>;
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  static bool less(const Entry& a, const Entry& b) noexcept {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  }

  void remove_at(std::uint32_t i) {
    pos_[heap_[i].second] = kAbsent;
    if (i + 1 == heap_.size()) {
      heap_.pop_back();
      return;
    }
    heap_[i] = heap_.back();
    heap_.pop_back();
    const Vertex moved = heap_[i].second;
    pos_[moved] = i;
    sift_down(i);
    sift_up(pos_[moved]);
  }

  void sift_up(std::uint32_t i) {
    const Entry e = heap_[i];
    while (i > 0) {
      const std::uint32_t parent = (i - 1) / 2;
      if (!less(e, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i].second] = i;
      i = parent;
    }
    heap_[i] = e;
    pos_[e.second] = i;
  }

  void sift_down(std::uint32_t i) {
    const Entry e = heap_[i];
    const auto n = static_cast<std::uint32_t>(heap_.size());
    while (true) {
      std::uint32_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], e)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i].second] = i;
      i = child;
    }
    heap_[i] = e;
    pos_[e.second] = i;
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> pos_;
};

// Dense array whose reset is O(1): entries written before the last reset()
// read back as the default value.
template <typename T>
class StampedArray {
 public:
  StampedArray() = default;
  StampedArray(std::size_t n, T fallback) : values_(n, fallback), stamps_(n, 0), fallback_(fallback) {}

  void resize(std::size_t n, T fallback) {
    values_.assign(n, fallback);
    stamps_.assign(n, 0);
    fallback_ = fallback;
    generation_ = 1;
  }

  std::size_t size() const noexcept { return values_.size(); }

  void reset() {
    if (++generation_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      generation_ = 1;
    }
  }

  const T& operator[](std::size_t i) const noexcept {
    return stamps_[i] == generation_ ? values_[i] : fallback_;
  }

  bool is_set(std::size_t i) const noexcept { return stamps_[i] == generation_; }

  T& ref(std::size_t i) {
    if (stamps_[i] != generation_) {
      stamps_[i] = generation_;
      values_[i] = fallback_;
    }
    return values_[i];
  }

  void set(std::size_t i, T value) { ref(i) = std::move(value); }

 private:
  std::vector<T> values_;
  std::vector<std::uint32_t> stamps_;
  T fallback_{};
  std::uint32_t generation_ = 1;
};

}  // namespace ultra
