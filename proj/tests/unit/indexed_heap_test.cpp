#include <gtest/gtest.h>

#include <map>
#include <set>

#include "banroute/generators.hpp"
#include "banroute/indexed_heap.hpp"

namespace banroute {
namespace {

TEST(IndexedHeap, TiesBreakById) {
  IndexedHeap<int> heap(5);
  heap.push(3, 7);
  heap.push(1, 7);
  heap.push(4, 2);
  EXPECT_EQ(heap.pop(), 4u);
  EXPECT_EQ(heap.pop(), 1u);
  EXPECT_EQ(heap.pop(), 3u);
  EXPECT_TRUE(heap.empty());
}

TEST(IndexedHeap, DecreaseOnly) {
  IndexedHeap<int> heap(3);
  EXPECT_TRUE(heap.push_or_decrease(0, 10));
  EXPECT_FALSE(heap.push_or_decrease(0, 12));
  EXPECT_FALSE(heap.push_or_decrease(0, 10));
  EXPECT_TRUE(heap.push_or_decrease(0, 4));
  EXPECT_EQ(heap.key(0), 4);
  heap.clear();
  EXPECT_FALSE(heap.contains(0));
}

TEST(IndexedHeap, MatchesOrderedSet) {
  Rng rng(1);
  constexpr std::uint32_t n = 64;
  IndexedHeap<std::int64_t> heap(n);
  std::set<std::pair<std::int64_t, std::uint32_t>> ref;
  std::map<std::uint32_t, std::int64_t> keys;
  for (int op = 0; op < 20000; ++op) {
    const auto id = static_cast<std::uint32_t>(rng.uniform(0, n - 1));
    if (rng.chance(0.6)) {
      const std::int64_t k = rng.uniform(0, 100);
      const bool changed = heap.push_or_decrease(id, k);
      const auto it = keys.find(id);
      const bool expect_change = it == keys.end() || k < it->second;
      ASSERT_EQ(changed, expect_change);
      if (expect_change) {
        if (it != keys.end()) ref.erase({it->second, id});
        keys[id] = k;
        ref.insert({k, id});
      }
    } else if (!ref.empty()) {
      ASSERT_EQ(heap.top_key(), ref.begin()->first);
      ASSERT_EQ(heap.pop(), ref.begin()->second);
      keys.erase(ref.begin()->second);
      ref.erase(ref.begin());
    }
    ASSERT_EQ(heap.size(), ref.size());
  }
}

}  // namespace
}  // namespace banroute
