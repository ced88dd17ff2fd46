#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace mecsim {

// Deterministic random stream. All samplers are stateless functions of the
// underlying engine so that serializing the engine captures the full state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix(seed)), seed_base_(mix(seed)) {}

    // Derives an independent substream, e.g. one per component or replica.
    RngStream substream(std::uint64_t stream_id) const {
        return RngStream(mix(seed_base_ ^ mix(stream_id + 0x9e3779b97f4a7c15ULL)));
    }

    double uniform() {
        // 53-bit mantissa uniform in [0, 1)
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Box-Muller, no cached spare value
    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Knuth product method; fine for the means used here (tens of users)
    std::uint64_t poisson(double mean) {
        const double limit = std::exp(-mean);
        double product = uniform();
        std::uint64_t count = 0;
        while (product > limit) {
            product *= uniform();
            ++count;
        }
        return count;
    }

    // Marsaglia-Tsang; valid for shape >= 1, which covers beta parameters here
    double gamma(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double alpha, double beta_param) {
        const double g1 = gamma(alpha);
        const double g2 = gamma(beta_param);
        return g1 / (g1 + g2);
    }

    std::string serialize() const {
        std::ostringstream os;
        os << engine_ << ' ' << seed_base_;
        return os.str();
    }

    static RngStream deserialize(const std::string& text) {
        RngStream rng(0);
        std::istringstream is(text);
        is >> rng.engine_ >> rng.seed_base_;
        return rng;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_base_ = 0;
};

}  // namespace mecsim
