#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mecsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Physical / traffic model parameters.
struct SimConfig {
    int num_edges = 3;               // E
    int num_files = 50;              // F
    int cache_slots = 10;            // F1, files per edge cache
    double file_size_bits = 8.0e6;   // s_f, 1 MB
    double cell_radius_m = 100.0;    // r
    double user_density_per_km2 = 200.0;  // lambda
    double zipf_skew = 1.2;          // upsilon
    double path_loss = 4.0;          // alpha
    double bandwidth_edge_hz = 4.5e6;
    double bandwidth_cloud_hz = 4.5e6;
    double cloud_distance_m = 3000.0;
    double peak_power_w = 39.953;    // P, system-wide
    double noise_power_w = 1e-13;    // sigma^2, unspecified upstream; configurable
    int fixed_users = 0;             // 0 = draw user count from the Poisson process
    std::uint64_t rng_seed = 1;

    double cache_capacity_bits() const { return cache_slots * file_size_bits; }
    void validate() const;
};

enum class Algorithm {
    MarlMabla,
    MarlSt,
    MarlJt,
    SarlJt,
    LruJt,
    LfuJt,
    FifoJt,
    Oracle,
};

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class OptimizerKind { Sgd, Adagrad };

// Learning + loop parameters; defaults follow the experiment setup.
struct ExperimentConfig {
    SimConfig sim;
    Algorithm algorithm = Algorithm::MarlMabla;
    int iterations = 4000;    // N_T
    int marl_steps = 75;      // N_t1
    int mabla_steps = 50;     // N_t2
    std::size_t replay_capacity = 100000;
    double learning_rate = 1.5e-4;
    double target_tau = 0.001;   // soft target-update coefficient
    double discount = 0.95;      // gamma
    double initial_epsilon = 0.03;
    double final_epsilon = 0.0;
    int batch_size = 512;
    int hidden_dim = 128;
    int update_every = 1;        // gradient updates every k MARL steps
    OptimizerKind optimizer = OptimizerKind::Sgd;
    bool beta_reinit_per_iteration = false;  // re-init automata each iteration T
    std::uint64_t oracle_max_configs = 1000000;
    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir = "out";

    void validate() const;
};

// Strict flat key=value parser; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace mecsim
