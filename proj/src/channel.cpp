#include "mecsim/channel.hpp"

#include <algorithm>
#include <cmath>

namespace mecsim {

namespace {

double gain_magnitude(RngStream& rng, double dist, double path_loss) {
    // g ~ CN(0,1): real and imaginary parts N(0, 1/2)
    const double re = rng.normal() * M_SQRT1_2;
    const double im = rng.normal() * M_SQRT1_2;
    return std::hypot(re, im) * std::pow(dist, -path_loss / 2.0);
}

}  // namespace

ChannelSnapshot sample_channels(const SimConfig& cfg, const NetworkTopology& topo, RngStream& rng) {
    const int E = topo.num_edges();
    const int U = topo.num_users();
    ChannelSnapshot ch;
    ch.h_edge.assign(E, std::vector<double>(U, 0.0));
    ch.h_cloud.assign(U, 0.0);
    ch.p_edge.assign(E, std::vector<double>(U, 0.0));
    ch.p_cloud.assign(U, 0.0);
    ch.sic_order.assign(E, {});

    for (int e = 0; e < E; ++e) {
        for (int u = 0; u < U; ++u) {
            const double d = distance(topo.edge_positions[e], topo.user_positions[u]);
            ch.h_edge[e][u] = gain_magnitude(rng, std::max(d, 1.0), cfg.path_loss);
        }
    }
    for (int u = 0; u < U; ++u) {
        ch.h_cloud[u] = gain_magnitude(rng, cfg.cloud_distance_m, cfg.path_loss);
    }

    for (int e = 0; e < E; ++e) {
        ch.sic_order[e] = topo.covered_users[e];
        std::stable_sort(ch.sic_order[e].begin(), ch.sic_order[e].end(),
                         [&](int a, int b) { return ch.h_edge[e][a] > ch.h_edge[e][b]; });
    }

    // initial allocation over all coverage links; replaced once y is known
    std::size_t coverage_links = 0;
    for (int e = 0; e < E; ++e) coverage_links += topo.covered_users[e].size();
    const double edge_budget = cfg.peak_power_w / 2.0;
    const double cloud_budget = cfg.peak_power_w / 2.0;
    if (coverage_links > 0) {
        const double per_link = edge_budget / static_cast<double>(coverage_links);
        for (int e = 0; e < E; ++e)
            for (int u : topo.covered_users[e]) ch.p_edge[e][u] = per_link;
    }
    if (U > 0) {
        const double per_user = cloud_budget / static_cast<double>(U);
        for (int u = 0; u < U; ++u) ch.p_cloud[u] = per_user;
    }
    return ch;
}

void allocate_powers(const SimConfig& cfg, const NetworkTopology& topo,
                     const AssociationState& assoc, ChannelSnapshot& ch) {
    const int E = topo.num_edges();
    const int U = topo.num_users();

    std::size_t active_links = 0;
    for (int e = 0; e < E; ++e)
        for (int u = 0; u < U; ++u)
            if (assoc.y[e][u]) ++active_links;
    std::size_t cloud_users = 0;
    for (int u = 0; u < U; ++u)
        if (assoc.mode[u] == TransmissionMode::Cloud) ++cloud_users;

    const double per_link = active_links > 0
                                ? cfg.peak_power_w / 2.0 / static_cast<double>(active_links)
                                : 0.0;
    const double per_cloud = cloud_users > 0
                                 ? cfg.peak_power_w / 2.0 / static_cast<double>(cloud_users)
                                 : 0.0;
    for (int e = 0; e < E; ++e)
        for (int u = 0; u < U; ++u) ch.p_edge[e][u] = assoc.y[e][u] ? per_link : 0.0;
    for (int u = 0; u < U; ++u)
        ch.p_cloud[u] = assoc.mode[u] == TransmissionMode::Cloud ? per_cloud : 0.0;
}

}  // namespace mecsim
