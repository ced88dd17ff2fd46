#include <doctest.h>

#include <cmath>

#include "mecsim/association.hpp"
#include "mecsim/channel.hpp"
#include "mecsim/rates.hpp"
#include "mecsim/topology.hpp"
#include "test_util.hpp"

using namespace mecsim;

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.fixed_users = 12;
    return cfg;
}

}  // namespace

TEST_CASE("mean squared gain follows the d^-alpha law") {
    // place one edge at the origin and users at distances 50 and 100; the
    // average |h|^2 ratio must approach (50/100)^-alpha = 16
    SimConfig cfg;
    cfg.num_edges = 1;
    cfg.fixed_users = 2;
    const auto topo = mecsim::test::make_topology({{0, 0}}, {{50, 0}, {100, 0}}, 1000.0);

    RngStream rng(37);
    double sum_near = 0, sum_far = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_channels(cfg, topo, rng);
        sum_near += ch.h_edge[0][0] * ch.h_edge[0][0];
        sum_far += ch.h_edge[0][1] * ch.h_edge[0][1];
    }
    CHECK(sum_near / sum_far == doctest::Approx(16.0).epsilon(0.05));
    // unit-mean fading on top of the path loss: E|h|^2 = d^-alpha
    CHECK(sum_near / n == doctest::Approx(std::pow(50.0, -4.0)).epsilon(0.03));
}

TEST_CASE("cloud gains use the fixed backhaul distance") {
    SimConfig cfg = base_config();
    RngStream topo_rng(2);
    const auto topo = sample_topology(cfg, topo_rng);
    RngStream rng(3);
    double sum = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_channels(cfg, topo, rng);
        for (double h : ch.h_cloud) sum += h * h;
    }
    const double expect = std::pow(cfg.cloud_distance_m, -cfg.path_loss);
    CHECK(sum / (n * topo.num_users()) == doctest::Approx(expect).epsilon(0.03));
}

TEST_CASE("SIC order sorts covered users by descending gain") {
    SimConfig cfg = base_config();
    RngStream rng(5);
    const auto topo = sample_topology(cfg, rng);
    const auto ch = sample_channels(cfg, topo, rng);
    for (int e = 0; e < topo.num_edges(); ++e) {
        REQUIRE(ch.sic_order[e].size() == topo.covered_users[e].size());
        for (std::size_t k = 1; k < ch.sic_order[e].size(); ++k) {
            CHECK(ch.h_edge[e][ch.sic_order[e][k - 1]] >= ch.h_edge[e][ch.sic_order[e][k]]);
        }
    }
}

TEST_CASE("initial powers split the budget over coverage links and users") {
    SimConfig cfg = base_config();
    RngStream rng(7);
    const auto topo = sample_topology(cfg, rng);
    const auto ch = sample_channels(cfg, topo, rng);

    double edge_total = 0;
    for (int e = 0; e < topo.num_edges(); ++e)
        for (int u = 0; u < topo.num_users(); ++u) edge_total += ch.p_edge[e][u];
    double cloud_total = 0;
    for (double p : ch.p_cloud) cloud_total += p;

    CHECK(edge_total == doctest::Approx(cfg.peak_power_w / 2).epsilon(1e-9));
    CHECK(cloud_total == doctest::Approx(cfg.peak_power_w / 2).epsilon(1e-9));
    // only coverage links carry power
    for (int e = 0; e < topo.num_edges(); ++e)
        for (int u = 0; u < topo.num_users(); ++u)
            if (!topo.covers(e, u)) CHECK(ch.p_edge[e][u] == 0.0);
}

TEST_CASE("allocate_powers splits equally over active links and cloud users") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 4;
    cfg.cache_slots = 1;
    const auto topo = mecsim::test::make_topology({{0, 0}, {50, 0}},
                                                  {{10, 0}, {25, 0}, {40, 0}, {500, 500}}, 100.0);
    RngStream rng(9);
    auto ch = sample_channels(cfg, topo, rng);

    // edge 0 caches file 1, edge 1 caches file 2
    const auto cache = CacheState::init(2, 4, 1, {{1}, {2}});
    RequestState req;
    req.requested_file = {1, 1, 2, 3};  // user 3 is out of coverage, cloud
    const auto assoc = build_association(topo, cache, req, ch, uniform_arms(4, Arm::Jt));
    allocate_powers(cfg, topo, assoc, ch);

    int active = 0;
    for (int e = 0; e < 2; ++e)
        for (int u = 0; u < 4; ++u) active += assoc.y[e][u];
    REQUIRE(active > 0);
    const double per_link = cfg.peak_power_w / 2 / active;
    for (int e = 0; e < 2; ++e)
        for (int u = 0; u < 4; ++u)
            CHECK(ch.p_edge[e][u] == doctest::Approx(assoc.y[e][u] ? per_link : 0.0));

    int cloud = 0;
    for (int u = 0; u < 4; ++u)
        if (assoc.mode[u] == TransmissionMode::Cloud) ++cloud;
    REQUIRE(cloud >= 1);
    for (int u = 0; u < 4; ++u) {
        if (assoc.mode[u] == TransmissionMode::Cloud)
            CHECK(ch.p_cloud[u] == doctest::Approx(cfg.peak_power_w / 2 / cloud));
        else
            CHECK(ch.p_cloud[u] == 0.0);
    }

    CHECK(check_constraints(cache, assoc, ch, cfg).empty());
}

TEST_CASE("edge distances are clamped below one meter") {
    SimConfig cfg;
    cfg.num_edges = 1;
    cfg.fixed_users = 1;
    const auto topo = mecsim::test::make_topology({{0, 0}}, {{0, 0}}, 100.0);
    RngStream rng(11);
    double sum = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_channels(cfg, topo, rng);
        sum += ch.h_edge[0][0] * ch.h_edge[0][0];
    }
    // clamp to 1 m means unit path loss, so E|h|^2 = 1
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.03));
}
