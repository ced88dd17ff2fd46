#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "mecsim/channel.hpp"
#include "mecsim/oracle.hpp"
#include "mecsim/rates.hpp"
#include "mecsim/topology.hpp"
#include "mecsim/zipf.hpp"
#include "test_util.hpp"

using namespace mecsim;
using mecsim::test::make_channel;
using mecsim::test::make_topology;

namespace {

// independent recursive enumerator used to cross-check the exhaustive search
double brute_force_best(const SimConfig& cfg, const NetworkTopology& topo,
                        const RequestState& req, const ChannelSnapshot& ch) {
    const int E = topo.num_edges();
    const int F = cfg.num_files;
    const int F1 = cfg.cache_slots;

    std::vector<std::vector<int>> subsets;
    std::vector<int> current;
    std::function<void(int)> gen = [&](int start) {
        if (static_cast<int>(current.size()) == F1) {
            subsets.push_back(current);
            return;
        }
        for (int f = start; f <= F; ++f) {
            current.push_back(f);
            gen(f + 1);
            current.pop_back();
        }
    };
    gen(1);

    std::vector<int> free_users;
    for (int u = 0; u < topo.num_users(); ++u)
        if (topo.multi_covered(u)) free_users.push_back(u);

    double best = -1;
    std::vector<int> pick(E, 0);
    std::function<void(int)> walk = [&](int e) {
        if (e == E) {
            std::vector<std::vector<int>> files;
            for (int i : pick) files.push_back(subsets[i]);
            const auto cache = CacheState::init(E, F, F1, files);
            for (std::uint64_t mask = 0; mask < (1ULL << free_users.size()); ++mask) {
                auto arms = uniform_arms(topo.num_users(), Arm::St);
                for (std::size_t i = 0; i < free_users.size(); ++i)
                    arms[free_users[i]] = (mask >> i) & 1 ? Arm::Jt : Arm::St;
                const auto assoc = build_association(topo, cache, req, ch, arms);
                ChannelSnapshot local = ch;
                allocate_powers(cfg, topo, assoc, local);
                const double d = evaluate_delay(cache, assoc, req, local, cfg).total_s;
                if (best < 0 || d < best) best = d;
            }
            return;
        }
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            pick[e] = static_cast<int>(i);
            walk(e + 1);
        }
    };
    walk(0);
    return best;
}

}  // namespace

TEST_CASE("one edge and one user: the oracle caches the requested file") {
    SimConfig cfg;
    cfg.num_edges = 1;
    cfg.num_files = 2;
    cfg.cache_slots = 1;
    const auto topo = make_topology({{0, 0}}, {{10, 0}}, 100.0);
    RequestState req{{2}};
    const auto ch = make_channel(topo, {{1e-4}}, {1e-9}, {{1.0}}, {1.0});

    const auto result = oracle_joint(cfg, topo, req, ch, OracleBudget{1000});
    REQUIRE(result.cache.slots.size() == 1);
    CHECK(result.cache.slots[0] == std::vector<int>{2});
    CHECK(result.assoc.mode[0] == TransmissionMode::St);
    CHECK(result.total_delay_s > 0.0);
}

TEST_CASE("the exhaustive search matches an independent enumerator") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 4;
    cfg.cache_slots = 2;
    cfg.fixed_users = 3;
    RngStream rng(61);

    for (int trial = 0; trial < 5; ++trial) {
        RngStream topo_rng = rng.substream(trial * 2 + 1);
        RngStream env_rng = rng.substream(trial * 2 + 2);
        // overlapping two-cell layout
        NetworkTopology topo;
        {
            SimConfig two = cfg;
            auto sampled = sample_topology(two, topo_rng);
            topo = make_topology({{0, 0}, {80, 0}}, sampled.user_positions, cfg.cell_radius_m);
        }
        const auto req = sample_requests(cfg, topo, env_rng);
        const auto ch = sample_channels(cfg, topo, env_rng);

        const auto result = oracle_joint(cfg, topo, req, ch, OracleBudget{10000});
        const double expect = brute_force_best(cfg, topo, req, ch);
        CHECK(result.total_delay_s == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("the oracle solution is a lower bound for arbitrary configurations") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 4;
    cfg.cache_slots = 1;
    cfg.fixed_users = 4;
    RngStream rng(63);
    RngStream topo_rng = rng.substream(1);
    RngStream env_rng = rng.substream(2);
    auto sampled = sample_topology(cfg, topo_rng);
    const auto topo = make_topology({{0, 0}, {80, 0}}, sampled.user_positions, cfg.cell_radius_m);
    const auto req = sample_requests(cfg, topo, env_rng);
    const auto ch = sample_channels(cfg, topo, env_rng);

    const auto result = oracle_joint(cfg, topo, req, ch, OracleBudget{100000});

    RngStream pick(65);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<int>> files(2);
        for (int e = 0; e < 2; ++e)
            files[e] = {static_cast<int>(pick.uniform_int(cfg.num_files)) + 1};
        const auto cache = CacheState::init(2, cfg.num_files, 1, files);
        std::vector<Arm> arms(topo.num_users());
        for (auto& a : arms) a = pick.uniform() < 0.5 ? Arm::St : Arm::Jt;
        const auto assoc = build_association(topo, cache, req, ch, arms);
        ChannelSnapshot local = ch;
        allocate_powers(cfg, topo, assoc, local);
        const double d = evaluate_delay(cache, assoc, req, local, cfg).total_s;
        CHECK(result.total_delay_s <= d + 1e-12);
    }
}

TEST_CASE("oracle results are deterministic including ties") {
    SimConfig cfg;
    cfg.num_edges = 1;
    cfg.num_files = 3;
    cfg.cache_slots = 1;
    const auto topo = make_topology({{0, 0}}, {{10, 0}}, 100.0);
    RequestState req{{1}};
    const auto ch = make_channel(topo, {{1e-4}}, {1e-9}, {{1.0}}, {1.0});

    const auto a = oracle_joint(cfg, topo, req, ch, OracleBudget{1000});
    const auto b = oracle_joint(cfg, topo, req, ch, OracleBudget{1000});
    CHECK(a.cache.slots == b.cache.slots);
    CHECK(a.total_delay_s == b.total_delay_s);
    // caches {2} and {3} tie (both pure misses); the winner is the single
    // strictly better one, file 1, found first in lexicographic order
    CHECK(a.cache.slots[0] == std::vector<int>{1});
}

TEST_CASE("search sizes over budget are refused up front") {
    SimConfig cfg;
    cfg.num_edges = 3;
    cfg.num_files = 50;
    cfg.cache_slots = 10;
    cfg.fixed_users = 5;
    RngStream rng(67);
    const auto topo = sample_topology(cfg, rng);
    const auto req = sample_requests(cfg, topo, rng);
    const auto ch = sample_channels(cfg, topo, rng);

    CHECK_THROWS_AS(oracle_joint(cfg, topo, req, ch, OracleBudget{1000000}),
                    OracleBudgetExceeded);
    try {
        oracle_joint(cfg, topo, req, ch, OracleBudget{1000000});
    } catch (const OracleBudgetExceeded& e) {
        CHECK(e.search_size > 1000000ULL);
    }
}

TEST_CASE("the transmission restriction sweeps modes with the cache frozen") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 2;
    cfg.cache_slots = 1;
    const auto topo = make_topology({{0, 0}, {50, 0}}, {{25, 0}, {20, 0}}, 100.0);
    RequestState req{{1, 1}};
    const auto cache = CacheState::init(2, 2, 1, {{1}, {1}});
    const auto ch = make_channel(topo, {{1e-4, 1.2e-4}, {1e-4, 0.8e-4}}, {1e-9, 1e-9},
                                 {{1.0, 1.0}, {1.0, 1.0}}, {0.0, 0.0});

    const auto result = oracle_transmission(cfg, topo, cache, req, ch, OracleBudget{100});

    // enumerate the four arm patterns by hand
    double best = -1;
    for (int mask = 0; mask < 4; ++mask) {
        std::vector<Arm> arms = {mask & 1 ? Arm::Jt : Arm::St, mask & 2 ? Arm::Jt : Arm::St};
        const auto assoc = build_association(topo, cache, req, ch, arms);
        ChannelSnapshot local = ch;
        allocate_powers(cfg, topo, assoc, local);
        const double d = evaluate_delay(cache, assoc, req, local, cfg).total_s;
        if (best < 0 || d < best) best = d;
    }
    CHECK(result.total_delay_s == doctest::Approx(best).epsilon(1e-12));
    CHECK(result.cache.slots == cache.slots);
}

TEST_CASE("the transmission restriction also honors its budget") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 2;
    cfg.cache_slots = 1;
    // five multi-covered users -> 32 mode patterns
    const auto topo = make_topology(
        {{0, 0}, {50, 0}}, {{25, 0}, {20, 0}, {30, 0}, {25, 5}, {25, -5}}, 100.0);
    RequestState req{{1, 1, 1, 1, 1}};
    const auto cache = CacheState::init(2, 2, 1, {{1}, {1}});
    const auto ch = make_channel(
        topo, {{1e-4, 1e-4, 1e-4, 1e-4, 1e-4}, {1e-4, 1e-4, 1e-4, 1e-4, 1e-4}},
        {1e-9, 1e-9, 1e-9, 1e-9, 1e-9},
        {{1.0, 1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0, 1.0}}, {0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(oracle_transmission(cfg, topo, cache, req, ch, OracleBudget{16}),
                    OracleBudgetExceeded);
    CHECK_NOTHROW(oracle_transmission(cfg, topo, cache, req, ch, OracleBudget{32}));
}
