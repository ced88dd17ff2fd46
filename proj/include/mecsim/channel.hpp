#pragma once

#include "mecsim/config.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/state.hpp"

namespace mecsim {

// Draws |g| as the magnitude of a standard complex Gaussian, applies the
// d^(-alpha/2) path loss, and sorts the per-edge SIC decode order. Powers are
// initially equal-split over all coverage links (and all users on the cloud
// side); call allocate_powers once an association is known.
ChannelSnapshot sample_channels(const SimConfig& cfg, const NetworkTopology& topo, RngStream& rng);

// Equal-split power rule: half the peak power across active edge links
// (y[e][u] = 1), half across cloud-served users. Idle links get zero.
void allocate_powers(const SimConfig& cfg, const NetworkTopology& topo,
                     const AssociationState& assoc, ChannelSnapshot& ch);

}  // namespace mecsim
