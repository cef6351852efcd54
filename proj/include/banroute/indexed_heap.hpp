#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace banroute {

/// Binary min-heap over the ids 0..capacity-1 with decrease-key. Equal keys
/// are ordered by id.
template <class Key>
class IndexedHeap {
 public:
  explicit IndexedHeap(std::size_t capacity = 0) : pos_(capacity, kAbsent), keys_(capacity) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(std::uint32_t id) const { return pos_[id] != kAbsent; }
  const Key& key(std::uint32_t id) const { return keys_[id]; }

  std::uint32_t top() const { return heap_.front(); }
  const Key& top_key() const { return keys_[heap_.front()]; }

  void push(std::uint32_t id, const Key& key) {
    keys_[id] = key;
    pos_[id] = heap_.size();
    heap_.push_back(id);
    sift_up(heap_.size() - 1);
  }

  /// Inserts, or lowers the key of a queued id. Larger keys are ignored.
  /// Returns true when the heap changed.
  bool push_or_decrease(std::uint32_t id, const Key& key) {
    if (!contains(id)) {
      push(id, key);
      return true;
    }
    if (!(key < keys_[id])) return false;
    keys_[id] = key;
    sift_up(pos_[id]);
    return true;
  }

  std::uint32_t pop() {
    const std::uint32_t id = heap_.front();
    const std::uint32_t last = heap_.back();
    heap_.pop_back();
    pos_[id] = kAbsent;
    if (!heap_.empty()) {
      heap_[0] = last;
      pos_[last] = 0;
      sift_down(0);
    }
    return id;
  }

  void clear() {
    for (std::uint32_t id : heap_) pos_[id] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  bool less(std::uint32_t a, std::uint32_t b) const {
    if (keys_[a] < keys_[b]) return true;
    if (keys_[b] < keys_[a]) return false;
    return a < b;
  }

  void place(std::size_t i, std::uint32_t id) {
    heap_[i] = id;
    pos_[id] = i;
  }

  void sift_up(std::size_t i) {
    const std::uint32_t id = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(id, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, id);
  }

  void sift_down(std::size_t i) {
    const std::uint32_t id = heap_[i];
    const std::size_t n = heap_.size();
    while (true) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], id)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, id);
  }

  std::vector<std::uint32_t> heap_;
  std::vector<std::size_t> pos_;
  std::vector<Key> keys_;
};

}  // namespace banroute
