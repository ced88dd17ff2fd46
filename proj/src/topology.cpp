#include "mecsim/topology.hpp"

#include <algorithm>
#include <cmath>

namespace mecsim {

std::vector<Point> edge_layout(int num_edges, double cell_radius_m) {
    std::vector<Point> edges;
    edges.reserve(num_edges);
    if (num_edges == 3) {
        // equilateral triangle with side r, centered at the origin
        const double circum = cell_radius_m / std::sqrt(3.0);
        for (int e = 0; e < 3; ++e) {
            const double angle = M_PI / 2.0 + e * 2.0 * M_PI / 3.0;
            edges.push_back({circum * std::cos(angle), circum * std::sin(angle)});
        }
    } else {
        const double ring = 0.9 * cell_radius_m;
        for (int e = 0; e < num_edges; ++e) {
            const double angle = e * 2.0 * M_PI / num_edges;
            edges.push_back({ring * std::cos(angle), ring * std::sin(angle)});
        }
    }
    return edges;
}

Region user_region(const std::vector<Point>& edges, double cell_radius_m) {
    Point lo = edges.front(), hi = edges.front();
    for (const auto& p : edges) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    Region region;
    region.center = {(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0};
    double spread = 0;
    for (const auto& p : edges) spread = std::max(spread, distance(p, region.center));
    region.half_width_m = spread + cell_radius_m;
    return region;
}

NetworkTopology sample_topology(const SimConfig& cfg, RngStream& rng) {
    NetworkTopology topo;
    topo.edge_positions = edge_layout(cfg.num_edges, cfg.cell_radius_m);
    const Region region = user_region(topo.edge_positions, cfg.cell_radius_m);

    int num_users;
    if (cfg.fixed_users > 0) {
        num_users = cfg.fixed_users;
    } else {
        const double mean = cfg.user_density_per_km2 * region.area_km2();
        num_users = static_cast<int>(rng.poisson(mean));
        if (num_users == 0) throw EmptyTopology();
    }

    topo.user_positions.reserve(num_users);
    for (int u = 0; u < num_users; ++u) {
        const double x = rng.uniform(region.center.x - region.half_width_m,
                                     region.center.x + region.half_width_m);
        const double y = rng.uniform(region.center.y - region.half_width_m,
                                     region.center.y + region.half_width_m);
        topo.user_positions.push_back({x, y});
    }

    topo.covering_edges.assign(num_users, {});
    topo.covered_users.assign(cfg.num_edges, {});
    for (int u = 0; u < num_users; ++u) {
        for (int e = 0; e < cfg.num_edges; ++e) {
            if (distance(topo.user_positions[u], topo.edge_positions[e]) <= cfg.cell_radius_m) {
                topo.covering_edges[u].push_back(e);
                topo.covered_users[e].push_back(u);
            }
        }
    }
    return topo;
}

}  // namespace mecsim
