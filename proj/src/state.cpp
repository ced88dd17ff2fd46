#include "mecsim/state.hpp"

namespace mecsim {

CacheState CacheState::init(int num_edges, int num_files, int cache_slots,
                            const std::vector<std::vector<int>>& initial_files) {
    CacheState cache;
    cache.num_files = num_files;
    cache.slots.assign(num_edges, {});
    cache.last_used.assign(num_edges, std::vector<std::uint64_t>(cache_slots, 0));
    cache.use_count.assign(num_edges, std::vector<std::uint64_t>(cache_slots, 0));
    cache.inserted_at.assign(num_edges, std::vector<std::uint64_t>(cache_slots, 0));
    for (int e = 0; e < num_edges; ++e) {
        cache.slots[e] = initial_files[e];
        for (std::size_t s = 0; s < cache.slots[e].size(); ++s) {
            cache.inserted_at[e][s] = s;  // deterministic insertion order
        }
    }
    return cache;
}

}  // namespace mecsim
