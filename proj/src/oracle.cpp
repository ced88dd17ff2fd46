#include "mecsim/oracle.hpp"

#include <cmath>

#include "mecsim/channel.hpp"
#include "mecsim/rates.hpp"

namespace mecsim {

namespace {

std::uint64_t binomial(int n, int k) {
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

// lexicographic next k-combination of {1..n}; false when exhausted
bool next_combination(std::vector<int>& combo, int n) {
    const int k = static_cast<int>(combo.size());
    for (int i = k - 1; i >= 0; --i) {
        if (combo[i] < n - (k - 1 - i)) {
            ++combo[i];
            for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> multi_covered_users(const NetworkTopology& topo) {
    std::vector<int> users;
    for (int u = 0; u < topo.num_users(); ++u) {
        if (topo.multi_covered(u)) users.push_back(u);
    }
    return users;
}

// checked product; saturates above the budget so overflow cannot wrap
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

struct ModeSweepResult {
    bool found = false;
    double best_delay = 0;
    std::vector<Arm> best_arms;
    AssociationState best_assoc;
};

ModeSweepResult sweep_modes(const SimConfig& cfg, const NetworkTopology& topo,
                            const CacheState& cache, const RequestState& req,
                            const ChannelSnapshot& ch, const std::vector<int>& free_users) {
    ModeSweepResult result;
    std::vector<Arm> arms = uniform_arms(topo.num_users(), Arm::St);
    const std::uint64_t combos = 1ULL << free_users.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t i = 0; i < free_users.size(); ++i) {
            arms[free_users[i]] = (mask >> i) & 1 ? Arm::Jt : Arm::St;
        }
        AssociationState assoc = build_association(topo, cache, req, ch, arms);
        ChannelSnapshot local = ch;
        allocate_powers(cfg, topo, assoc, local);
        const double delay = evaluate_delay(cache, assoc, req, local, cfg).total_s;
        if (!result.found || delay < result.best_delay) {
            result.found = true;
            result.best_delay = delay;
            result.best_arms = arms;
            result.best_assoc = std::move(assoc);
        }
    }
    return result;
}

}  // namespace

OracleResult oracle_joint(const SimConfig& cfg, const NetworkTopology& topo,
                          const RequestState& req, const ChannelSnapshot& ch,
                          const OracleBudget& budget) {
    const int E = topo.num_edges();
    const int F = cfg.num_files;
    const int F1 = cfg.cache_slots;
    const auto free_users = multi_covered_users(topo);

    std::uint64_t size = 1;
    const std::uint64_t per_edge = binomial(F, F1);
    for (int e = 0; e < E; ++e) size = saturating_mul(size, per_edge);
    size = saturating_mul(size, 1ULL << free_users.size());
    if (size > budget.max_configs) throw OracleBudgetExceeded(size);

    // odometer over per-edge combinations, lexicographic per edge
    std::vector<std::vector<int>> combos(E);
    for (int e = 0; e < E; ++e) {
        combos[e].resize(F1);
        for (int i = 0; i < F1; ++i) combos[e][i] = i + 1;
    }

    OracleResult best;
    bool found = false;
    for (;;) {
        const CacheState cache = CacheState::init(E, F, F1, combos);
        const auto sweep = sweep_modes(cfg, topo, cache, req, ch, free_users);
        if (sweep.found && (!found || sweep.best_delay < best.total_delay_s)) {
            found = true;
            best.cache = cache;
            best.assoc = sweep.best_assoc;
            best.arms = sweep.best_arms;
            best.total_delay_s = sweep.best_delay;
        }
        int e = E - 1;
        while (e >= 0 && !next_combination(combos[e], F)) {
            for (int i = 0; i < F1; ++i) combos[e][i] = i + 1;
            --e;
        }
        if (e < 0) break;
    }
    return best;
}

OracleResult oracle_transmission(const SimConfig& cfg, const NetworkTopology& topo,
                                 const CacheState& cache, const RequestState& req,
                                 const ChannelSnapshot& ch, const OracleBudget& budget) {
    const auto free_users = multi_covered_users(topo);
    if (free_users.size() >= 63 || (1ULL << free_users.size()) > budget.max_configs) {
        throw OracleBudgetExceeded(free_users.size() >= 63 ? UINT64_MAX
                                                           : 1ULL << free_users.size());
    }
    const auto sweep = sweep_modes(cfg, topo, cache, req, ch, free_users);
    OracleResult result;
    result.cache = cache;
    result.assoc = sweep.best_assoc;
    result.arms = sweep.best_arms;
    result.total_delay_s = sweep.best_delay;
    return result;
}

}  // namespace mecsim
