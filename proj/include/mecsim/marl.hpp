#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mecsim/config.hpp"
#include "mecsim/mlp.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/state.hpp"
#include "mecsim/topology.hpp"
#include "mecsim/zipf.hpp"

namespace mecsim {

// Cache action: 0 is the no-op; 1..F1*F bijects onto (slot, file) pairs.
struct DecodedAction {
    bool noop = true;
    int delete_slot = -1;
    int add_file = -1;  // 1-based
};

DecodedAction decode_action(int action, int num_files, int cache_slots);

// Applies a decoded action in place. Adding a file already cached elsewhere in
// the same edge is a no-op so rows stay duplicate-free.
void apply_cache_action(CacheState& cache, int e, const DecodedAction& decoded);

// r_e = 1 / (edge e's masked delay); 0 when the edge served no traffic.
double compute_reward(int e, const DelayReport& report);

// Fixed-length local observation: request histogram over files of the users
// covered by edge e, scaled by the covered-user count.
std::vector<double> encode_observation(const NetworkTopology& topo, const RequestState& req,
                                       int e, int num_files);

// Global state: per edge [request histogram | cache membership vector].
std::vector<double> encode_state(const NetworkTopology& topo, const RequestState& req,
                                 const CacheState& cache, int num_files);

struct Transition {
    std::vector<float> state;
    std::vector<int> actions;      // one per edge
    std::vector<double> rewards;   // one per edge
    std::vector<float> next_state;
};

class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

    void push(Transition t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return data_[i]; }

    // Uniform minibatch of distinct indices.
    std::vector<std::size_t> sample_indices(std::size_t batch, RngStream& rng) const;

    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    std::size_t capacity_;
    std::size_t next_ = 0;  // ring insertion cursor once full
    std::vector<Transition> data_;
};

struct MarlSettings {
    int num_edges = 0;
    int num_files = 0;
    int cache_slots = 0;
    int hidden_dim = 64;
    double learning_rate = 1.5e-4;
    double discount = 0.95;
    double target_tau = 0.001;
    double initial_epsilon = 0.03;
    double final_epsilon = 0.0;
    int batch_size = 512;
    std::size_t replay_capacity = 100000;
    OptimizerKind optimizer = OptimizerKind::Sgd;
    bool shared_agent = false;  // SARL: one parameter set, global observation

    int action_count() const { return cache_slots * num_files + 1; }
    int state_dim() const { return 2 * num_edges * num_files; }
};

// Actor-critic learner over per-edge cache actions. In the default multi-agent
// mode each edge owns an actor over its local observation plus a centralized
// critic conditioned on the global state and the other edges' actions. In
// shared mode (the SARL baseline) a single parameter set observes the global
// state with an edge tag and factors the joint action per edge.
class MarlTrainer {
public:
    MarlTrainer(const MarlSettings& settings, RngStream& init_rng);

    // Epsilon-greedy execution policy; epsilon anneals linearly over
    // `progress` in [0, 1].
    std::vector<int> select_actions(const std::vector<double>& state, double progress,
                                    RngStream& rng) const;
    int select_action(int e, const std::vector<double>& state, double epsilon,
                      RngStream& rng) const;

    void store(Transition t) { replay_.push(std::move(t)); }
    bool ready() const { return replay_.size() >= static_cast<std::size_t>(settings_.batch_size); }

    // One round of per-agent critic and actor updates plus target mixing.
    void update(RngStream& rng);
    void soft_update_targets(double tau);

    // Exposed for gradient verification: loss / objective on a fixed batch,
    // with analytic gradients accumulated into `grad` when non-null.
    double critic_loss(int e, const std::vector<std::size_t>& batch,
                       std::vector<double>* grad) const;
    double actor_objective(int e, const std::vector<std::size_t>& batch,
                           std::vector<double>* grad) const;

    const MarlSettings& settings() const { return settings_; }
    ReplayBuffer& replay() { return replay_; }
    const ReplayBuffer& replay() const { return replay_; }
    double epsilon_at(double progress) const;

    Mlp& actor(int e) { return nets_[net_index(e)].actor; }
    const Mlp& actor(int e) const { return nets_[net_index(e)].actor; }
    Mlp& critic(int e) { return nets_[net_index(e)].critic; }
    const Mlp& critic(int e) const { return nets_[net_index(e)].critic; }
    Mlp& target_actor(int e) { return nets_[net_index(e)].target_actor; }
    Mlp& target_critic(int e) { return nets_[net_index(e)].target_critic; }

    std::vector<double> actor_input(int e, const std::vector<double>& state) const;
    std::vector<double> critic_input(int e, const std::vector<double>& state,
                                     const std::vector<int>& actions) const;

    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    struct AgentNets {
        Mlp actor;
        Mlp critic;
        Mlp target_actor;
        Mlp target_critic;
        Optimizer actor_opt;
        Optimizer critic_opt;
    };

    int net_index(int e) const { return settings_.shared_agent ? 0 : e; }
    int target_action(int e, const std::vector<double>& next_state) const;

    MarlSettings settings_;
    std::vector<AgentNets> nets_;
    ReplayBuffer replay_;
};

}  // namespace mecsim
