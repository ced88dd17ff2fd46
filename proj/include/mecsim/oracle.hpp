#pragma once

#include <cstdint>
#include <stdexcept>

#include "mecsim/association.hpp"
#include "mecsim/config.hpp"
#include "mecsim/state.hpp"
#include "mecsim/topology.hpp"

namespace mecsim {

struct OracleBudget {
    std::uint64_t max_configs = 1000000;
};

struct OracleBudgetExceeded : std::runtime_error {
    std::uint64_t search_size;
    explicit OracleBudgetExceeded(std::uint64_t size)
        : std::runtime_error("oracle search size " + std::to_string(size) + " exceeds budget"),
          search_size(size) {}
};

struct OracleResult {
    CacheState cache;
    AssociationState assoc;
    std::vector<Arm> arms;
    double total_delay_s = 0;
};

// Exhaustive minimization of the total delay over all per-edge F1-subsets and
// all ST/JT assignments for multi-covered users, on one frozen snapshot.
// Ties break lexicographically in enumeration order.
OracleResult oracle_joint(const SimConfig& cfg, const NetworkTopology& topo,
                          const RequestState& req, const ChannelSnapshot& ch,
                          const OracleBudget& budget);

// Mode-only restriction with the cache frozen.
OracleResult oracle_transmission(const SimConfig& cfg, const NetworkTopology& topo,
                                 const CacheState& cache, const RequestState& req,
                                 const ChannelSnapshot& ch, const OracleBudget& budget);

}  // namespace mecsim
