#pragma once

#include "mecsim/config.hpp"
#include "mecsim/state.hpp"

namespace mecsim {

enum class Arm : int { St = 0, Jt = 1 };

// Builds the association matrix y from per-user arm choices. Multi-covered
// users follow their arm; single-covered users are forced ST; users with no
// covering file-holder fall through to the cloud. A JT choice with only one
// file-holder degrades to ST so the stored mode matches the actual link count.
AssociationState build_association(const NetworkTopology& topo, const CacheState& cache,
                                   const RequestState& req, const ChannelSnapshot& ch,
                                   const std::vector<Arm>& arms);

std::vector<Arm> uniform_arms(int num_users, Arm arm);

}  // namespace mecsim
