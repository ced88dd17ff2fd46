#pragma once

#include <vector>

#include "mecsim/config.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/state.hpp"

namespace mecsim {

// Zipf popularity over file ranks 1..F: p(k) proportional to k^-skew.
// File id equals popularity rank.
class ZipfSampler {
public:
    ZipfSampler(int num_files, double skew);

    int sample(RngStream& rng) const;  // 1-based file id
    double probability(int file) const { return prob_[file - 1]; }

private:
    std::vector<double> prob_;
    std::vector<double> cdf_;
};

// Each user draws one requested file independently.
RequestState sample_requests(const SimConfig& cfg, const NetworkTopology& topo, RngStream& rng);

}  // namespace mecsim
