#pragma once

#include <cstdint>

#include "mecsim/state.hpp"

namespace mecsim {

enum class BaselinePolicyKind { Lru, Lfu, Fifo };

// Demand-fill update for one request at one edge. On a hit only the recency
// and frequency metadata move; on a miss the policy's victim slot is evicted
// and the requested file takes its place. `tick` is a monotone access counter
// supplied by the caller.
void baseline_update(BaselinePolicyKind policy, CacheState& cache, int e, int requested_f,
                     std::uint64_t tick);

}  // namespace mecsim
