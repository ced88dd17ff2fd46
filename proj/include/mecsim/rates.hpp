#pragma once

#include <string>

#include "mecsim/config.hpp"
#include "mecsim/state.hpp"

namespace mecsim {

// Whether user u's request is served by at least one edge link:
// I(sum_e x_{e,f} y_{e,u} z_{u,f} >= 1).
bool edge_indicator(int u, const CacheState& cache, const AssociationState& assoc,
                    const RequestState& req);

// One edge server's Shannon term for user u, with SIC interference from users
// later in e's decode order that request the same file over an active link.
// Zero when the requested file is uncached at e or the link is inactive.
double edge_rate_term(int e, int u, const CacheState& cache, const AssociationState& assoc,
                      const RequestState& req, const ChannelSnapshot& ch, const SimConfig& cfg);

// Single-transmission downlink rate for user u served by edge e.
double st_rate(int e, int u, const CacheState& cache, const AssociationState& assoc,
               const RequestState& req, const ChannelSnapshot& ch, const SimConfig& cfg);

// Joint-transmission rate: per-server terms summed over all serving edges.
double jt_rate(int u, const CacheState& cache, const AssociationState& assoc,
               const RequestState& req, const ChannelSnapshot& ch, const SimConfig& cfg);

// Cloud downlink rate; interference comes only from other cloud-served users.
double cloud_rate(int u, const CacheState& cache, const AssociationState& assoc,
                  const RequestState& req, const ChannelSnapshot& ch, const SimConfig& cfg);

// Delay of user u alone under the given association (mode-appropriate rate).
double user_delay(int u, const CacheState& cache, const AssociationState& assoc,
                  const RequestState& req, const ChannelSnapshot& ch, const SimConfig& cfg);

// Full delay report: edge delay, cloud delay, per-edge and per-user breakdowns.
// Throws InconsistentAssociation if an edge-assigned user has zero rate.
DelayReport evaluate_delay(const CacheState& cache, const AssociationState& assoc,
                           const RequestState& req, const ChannelSnapshot& ch,
                           const SimConfig& cfg);

struct ConstraintViolation {
    std::string constraint;  // "C1".."C4"
    std::string detail;
};

// Checks C1-C4; an empty result means the configuration is feasible.
std::vector<ConstraintViolation> check_constraints(const CacheState& cache,
                                                   const AssociationState& assoc,
                                                   const ChannelSnapshot& ch,
                                                   const SimConfig& cfg);

}  // namespace mecsim
