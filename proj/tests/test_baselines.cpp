#include <doctest.h>

#include "mecsim/baselines.hpp"

using namespace mecsim;

namespace {

CacheState three_slot_cache() {
    // one edge, files 1..6, slots hold {1, 2, 3}
    return CacheState::init(1, 6, 3, {{1, 2, 3}});
}

}  // namespace

TEST_CASE("LRU evicts the least recently used slot") {
    auto cache = three_slot_cache();
    std::uint64_t tick = 10;
    baseline_update(BaselinePolicyKind::Lru, cache, 0, 1, tick++);
    baseline_update(BaselinePolicyKind::Lru, cache, 0, 3, tick++);
    // file 2 is now stale; a miss on 5 must replace it
    baseline_update(BaselinePolicyKind::Lru, cache, 0, 5, tick++);
    CHECK(cache.cached(0, 1));
    CHECK(cache.cached(0, 3));
    CHECK(cache.cached(0, 5));
    CHECK(!cache.cached(0, 2));
    CHECK(cache.slot_of(0, 5) == 1);  // in place of the victim
}

TEST_CASE("LFU evicts the least frequently used slot") {
    auto cache = three_slot_cache();
    std::uint64_t tick = 10;
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 1, tick++);
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 1, tick++);
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 2, tick++);
    // counts: file 1 -> 2, file 2 -> 1, file 3 -> 0
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 6, tick++);
    CHECK(!cache.cached(0, 3));
    CHECK(cache.cached(0, 6));
    CHECK(cache.use_count[0][cache.slot_of(0, 6)] == 1);
}

TEST_CASE("LFU breaks count ties by recency") {
    auto cache = three_slot_cache();
    std::uint64_t tick = 10;
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 2, tick++);
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 3, tick++);
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 1, tick++);
    // all counts equal 1; file 2 has the oldest use
    baseline_update(BaselinePolicyKind::Lfu, cache, 0, 4, tick++);
    CHECK(!cache.cached(0, 2));
    CHECK(cache.cached(0, 4));
}

TEST_CASE("FIFO evicts by insertion order regardless of hits") {
    auto cache = three_slot_cache();
    std::uint64_t tick = 10;
    // heavy reuse of file 1 must not save it from FIFO eviction
    for (int i = 0; i < 5; ++i) baseline_update(BaselinePolicyKind::Fifo, cache, 0, 1, tick++);
    baseline_update(BaselinePolicyKind::Fifo, cache, 0, 4, tick++);
    CHECK(!cache.cached(0, 1));
    CHECK(cache.cached(0, 4));
    // next miss takes the second-oldest insertion
    baseline_update(BaselinePolicyKind::Fifo, cache, 0, 5, tick++);
    CHECK(!cache.cached(0, 2));
    CHECK(cache.cached(0, 5));
}

TEST_CASE("a hit never changes cache membership") {
    for (auto policy :
         {BaselinePolicyKind::Lru, BaselinePolicyKind::Lfu, BaselinePolicyKind::Fifo}) {
        auto cache = three_slot_cache();
        const auto before = cache.slots[0];
        baseline_update(policy, cache, 0, 2, 42);
        CHECK(cache.slots[0] == before);
        CHECK(cache.last_used[0][1] == 42);
        CHECK(cache.use_count[0][1] == 1);
    }
}

TEST_CASE("a miss preserves the slot count") {
    for (auto policy :
         {BaselinePolicyKind::Lru, BaselinePolicyKind::Lfu, BaselinePolicyKind::Fifo}) {
        auto cache = three_slot_cache();
        for (std::uint64_t t = 1; t <= 20; ++t) {
            baseline_update(policy, cache, 0, static_cast<int>(t % 6) + 1, t);
            CHECK(cache.slots[0].size() == 3);
            // no duplicates after churn
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = a + 1; b < 3; ++b)
                    CHECK(cache.slots[0][a] != cache.slots[0][b]);
        }
    }
}

TEST_CASE("edges update independently") {
    auto cache = CacheState::init(2, 6, 2, {{1, 2}, {3, 4}});
    baseline_update(BaselinePolicyKind::Lru, cache, 0, 5, 7);
    CHECK(cache.cached(0, 5));
    CHECK(cache.cached(1, 3));
    CHECK(cache.cached(1, 4));
    CHECK(!cache.cached(1, 5));
}
