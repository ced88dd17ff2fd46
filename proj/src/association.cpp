#include "mecsim/association.hpp"

namespace mecsim {

std::vector<Arm> uniform_arms(int num_users, Arm arm) {
    return std::vector<Arm>(static_cast<std::size_t>(num_users), arm);
}

AssociationState build_association(const NetworkTopology& topo, const CacheState& cache,
                                   const RequestState& req, const ChannelSnapshot& ch,
                                   const std::vector<Arm>& arms) {
    const int E = topo.num_edges();
    const int U = topo.num_users();
    AssociationState assoc;
    assoc.y.assign(E, std::vector<std::uint8_t>(U, 0));
    assoc.mode.assign(U, TransmissionMode::Cloud);

    for (int u = 0; u < U; ++u) {
        const int f = req.requested_file[u];
        std::vector<int> holders;
        for (int e : topo.covering_edges[u]) {
            if (cache.cached(e, f)) holders.push_back(e);
        }
        if (holders.empty()) continue;  // cloud fallback

        const bool want_jt = topo.multi_covered(u) && arms[u] == Arm::Jt;
        if (want_jt && holders.size() >= 2) {
            for (int e : holders) assoc.y[e][u] = 1;
            assoc.mode[u] = TransmissionMode::Jt;
        } else {
            // ST: strongest covering file-holder, ties to the lowest index
            int best = holders.front();
            for (int e : holders) {
                if (ch.h_edge[e][u] > ch.h_edge[best][u]) best = e;
            }
            assoc.y[best][u] = 1;
            assoc.mode[u] = TransmissionMode::St;
        }
    }
    return assoc;
}

}  // namespace mecsim
