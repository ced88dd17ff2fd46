#include "mecsim/zipf.hpp"

#include <algorithm>
#include <cmath>

namespace mecsim {

ZipfSampler::ZipfSampler(int num_files, double skew) {
    prob_.resize(num_files);
    double norm = 0;
    for (int k = 1; k <= num_files; ++k) norm += std::pow(k, -skew);
    for (int k = 1; k <= num_files; ++k) prob_[k - 1] = std::pow(k, -skew) / norm;
    cdf_.resize(num_files);
    double acc = 0;
    for (int k = 0; k < num_files; ++k) {
        acc += prob_[k];
        cdf_[k] = acc;
    }
    cdf_.back() = 1.0;
}

int ZipfSampler::sample(RngStream& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<int>(it - cdf_.begin()) + 1;
}

RequestState sample_requests(const SimConfig& cfg, const NetworkTopology& topo, RngStream& rng) {
    ZipfSampler zipf(cfg.num_files, cfg.zipf_skew);
    RequestState req;
    req.requested_file.resize(topo.num_users());
    for (int u = 0; u < topo.num_users(); ++u) req.requested_file[u] = zipf.sample(rng);
    return req;
}

}  // namespace mecsim
