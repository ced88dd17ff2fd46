#include "mecsim/baselines.hpp"

namespace mecsim {

namespace {

int victim_slot(BaselinePolicyKind policy, const CacheState& cache, int e) {
    const auto& last_used = cache.last_used[e];
    const auto& use_count = cache.use_count[e];
    const auto& inserted_at = cache.inserted_at[e];
    const int n = static_cast<int>(cache.slots[e].size());
    int victim = 0;
    for (int s = 1; s < n; ++s) {
        switch (policy) {
            case BaselinePolicyKind::Lru:
                if (last_used[s] < last_used[victim]) victim = s;
                break;
            case BaselinePolicyKind::Lfu:
                // least frequent; ties fall back to least recent, then slot index
                if (use_count[s] < use_count[victim] ||
                    (use_count[s] == use_count[victim] && last_used[s] < last_used[victim])) {
                    victim = s;
                }
                break;
            case BaselinePolicyKind::Fifo:
                if (inserted_at[s] < inserted_at[victim]) victim = s;
                break;
        }
    }
    return victim;
}

}  // namespace

void baseline_update(BaselinePolicyKind policy, CacheState& cache, int e, int requested_f,
                     std::uint64_t tick) {
    const int slot = cache.slot_of(e, requested_f);
    if (slot >= 0) {
        cache.last_used[e][slot] = tick;
        ++cache.use_count[e][slot];
        return;
    }
    const int victim = victim_slot(policy, cache, e);
    cache.slots[e][victim] = requested_f;
    cache.last_used[e][victim] = tick;
    cache.use_count[e][victim] = 1;
    cache.inserted_at[e][victim] = tick;
}

}  // namespace mecsim
