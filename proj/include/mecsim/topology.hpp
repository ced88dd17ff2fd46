#pragma once

#include "mecsim/config.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/state.hpp"

namespace mecsim {

// Deterministic edge layout: E=3 uses an equilateral triangle with side r so
// the cells intersect; other E are spread on a ring of radius 0.9 r.
std::vector<Point> edge_layout(int num_edges, double cell_radius_m);

// Square region the user point process lives in: centered on the edge layout,
// extended by one cell radius on each side.
struct Region {
    Point center;
    double half_width_m = 0;
    double area_km2() const {
        const double side_km = 2.0 * half_width_m / 1000.0;
        return side_km * side_km;
    }
};
Region user_region(const std::vector<Point>& edges, double cell_radius_m);

// Places edges, draws the user count from Poisson(density * area) unless
// cfg.fixed_users > 0, scatters users uniformly, computes coverage sets.
// Throws EmptyTopology when the Poisson draw is zero.
NetworkTopology sample_topology(const SimConfig& cfg, RngStream& rng);

}  // namespace mecsim
