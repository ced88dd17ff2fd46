#include "mecsim/marl.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "mecsim/serialize.hpp"

namespace mecsim {

using io::read_vec;
using io::write_vec;

namespace {

std::vector<double> to_double(const std::vector<float>& v) {
    return std::vector<double>(v.begin(), v.end());
}

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

DecodedAction decode_action(int action, int num_files, int cache_slots) {
    if (action < 0 || action > cache_slots * num_files) {
        throw std::out_of_range("cache action " + std::to_string(action) + " out of range");
    }
    DecodedAction d;
    if (action == 0) return d;
    const int b = action - 1;
    d.noop = false;
    d.delete_slot = b / num_files;
    d.add_file = b % num_files + 1;
    return d;
}

void apply_cache_action(CacheState& cache, int e, const DecodedAction& decoded) {
    if (decoded.noop) return;
    const int existing = cache.slot_of(e, decoded.add_file);
    if (existing >= 0 && existing != decoded.delete_slot) return;  // would duplicate
    cache.slots[e][decoded.delete_slot] = decoded.add_file;
    cache.use_count[e][decoded.delete_slot] = 0;
    cache.last_used[e][decoded.delete_slot] = 0;
}

double compute_reward(int e, const DelayReport& report) {
    const double d = report.per_edge_delay_s[e];
    return d > 0.0 ? 1.0 / d : 0.0;
}

std::vector<double> encode_observation(const NetworkTopology& topo, const RequestState& req,
                                       int e, int num_files) {
    std::vector<double> obs(num_files, 0.0);
    const auto& users = topo.covered_users[e];
    const double scale = users.empty() ? 1.0 : 1.0 / static_cast<double>(users.size());
    for (int u : users) obs[req.requested_file[u] - 1] += scale;
    return obs;
}

std::vector<double> encode_state(const NetworkTopology& topo, const RequestState& req,
                                 const CacheState& cache, int num_files) {
    const int E = topo.num_edges();
    std::vector<double> state;
    state.reserve(static_cast<std::size_t>(2 * E * num_files));
    for (int e = 0; e < E; ++e) {
        auto obs = encode_observation(topo, req, e, num_files);
        state.insert(state.end(), obs.begin(), obs.end());
        std::vector<double> cached(num_files, 0.0);
        for (int f : cache.slots[e]) cached[f - 1] = 1.0;
        state.insert(state.end(), cached.begin(), cached.end());
    }
    return state;
}

void ReplayBuffer::push(Transition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[next_] = std::move(t);
        next_ = (next_ + 1) % capacity_;
    }
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch, RngStream& rng) const {
    batch = std::min(batch, data_.size());
    // partial Fisher-Yates over an index vector
    std::vector<std::size_t> idx(data_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < batch; ++i) {
        const std::size_t j = i + rng.uniform_int(idx.size() - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(batch);
    return idx;
}

void ReplayBuffer::save(std::ostream& os) const {
    const std::uint64_t cap = capacity_, next = next_, n = data_.size();
    os.write(reinterpret_cast<const char*>(&cap), sizeof(cap));
    os.write(reinterpret_cast<const char*>(&next), sizeof(next));
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (const auto& t : data_) {
        write_vec(os, t.state);
        write_vec(os, t.actions);
        write_vec(os, t.rewards);
        write_vec(os, t.next_state);
    }
}

void ReplayBuffer::load(std::istream& is) {
    std::uint64_t cap = 0, next = 0, n = 0;
    is.read(reinterpret_cast<char*>(&cap), sizeof(cap));
    is.read(reinterpret_cast<char*>(&next), sizeof(next));
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    capacity_ = cap;
    next_ = next;
    data_.assign(n, {});
    for (auto& t : data_) {
        read_vec(is, t.state);
        read_vec(is, t.actions);
        read_vec(is, t.rewards);
        read_vec(is, t.next_state);
    }
}

MarlTrainer::MarlTrainer(const MarlSettings& settings, RngStream& init_rng)
    : settings_(settings), replay_(settings.replay_capacity) {
    const int E = settings_.num_edges;
    const int A = settings_.action_count();
    const int S = settings_.state_dim();
    const int actor_in = settings_.shared_agent ? S + E : settings_.num_files;
    const int critic_in = (settings_.shared_agent ? S + E : S) + (E - 1) * A;
    const int count = settings_.shared_agent ? 1 : E;
    nets_.reserve(count);
    for (int i = 0; i < count; ++i) {
        AgentNets n{Mlp(actor_in, settings_.hidden_dim, A),
                    Mlp(critic_in, settings_.hidden_dim, A),
                    Mlp(actor_in, settings_.hidden_dim, A),
                    Mlp(critic_in, settings_.hidden_dim, A),
                    Optimizer(settings_.optimizer, settings_.learning_rate,
                              Mlp(actor_in, settings_.hidden_dim, A).param_count()),
                    Optimizer(settings_.optimizer, settings_.learning_rate,
                              Mlp(critic_in, settings_.hidden_dim, A).param_count())};
        n.actor.init_params(init_rng);
        n.critic.init_params(init_rng);
        n.target_actor.params() = n.actor.params();
        n.target_critic.params() = n.critic.params();
        nets_.push_back(std::move(n));
    }
}

std::vector<double> MarlTrainer::actor_input(int e, const std::vector<double>& state) const {
    if (!settings_.shared_agent) {
        const int F = settings_.num_files;
        const std::size_t off = static_cast<std::size_t>(e) * 2 * F;
        return std::vector<double>(state.begin() + off, state.begin() + off + F);
    }
    std::vector<double> in = state;
    in.resize(state.size() + settings_.num_edges, 0.0);
    in[state.size() + e] = 1.0;
    return in;
}

std::vector<double> MarlTrainer::critic_input(int e, const std::vector<double>& state,
                                              const std::vector<int>& actions) const {
    const int A = settings_.action_count();
    std::vector<double> in = state;
    if (settings_.shared_agent) {
        in.resize(in.size() + settings_.num_edges, 0.0);
        in[state.size() + e] = 1.0;
    }
    for (int k = 0; k < settings_.num_edges; ++k) {
        if (k == e) continue;
        std::vector<double> onehot(A, 0.0);
        onehot[actions[k]] = 1.0;
        in.insert(in.end(), onehot.begin(), onehot.end());
    }
    return in;
}

double MarlTrainer::epsilon_at(double progress) const {
    progress = std::clamp(progress, 0.0, 1.0);
    return settings_.initial_epsilon +
           (settings_.final_epsilon - settings_.initial_epsilon) * progress;
}

int MarlTrainer::select_action(int e, const std::vector<double>& state, double epsilon,
                               RngStream& rng) const {
    if (epsilon > 0.0 && rng.uniform() < epsilon) {
        return static_cast<int>(rng.uniform_int(settings_.action_count()));
    }
    Mlp::Workspace ws;
    actor(e).forward(actor_input(e, state), ws);
    return argmax(ws.output);
}

std::vector<int> MarlTrainer::select_actions(const std::vector<double>& state, double progress,
                                             RngStream& rng) const {
    const double eps = epsilon_at(progress);
    std::vector<int> actions(settings_.num_edges);
    for (int e = 0; e < settings_.num_edges; ++e) {
        actions[e] = select_action(e, state, eps, rng);
    }
    return actions;
}

int MarlTrainer::target_action(int e, const std::vector<double>& next_state) const {
    Mlp::Workspace ws;
    nets_[net_index(e)].target_actor.forward(actor_input(e, next_state), ws);
    return argmax(ws.output);
}

double MarlTrainer::critic_loss(int e, const std::vector<std::size_t>& batch,
                                std::vector<double>* grad) const {
    const auto& net = nets_[net_index(e)];
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    Mlp::Workspace ws, target_ws;
    std::vector<double> grad_out(settings_.action_count(), 0.0);
    for (std::size_t j : batch) {
        const Transition& t = replay_.at(j);
        const auto next_state = to_double(t.next_state);
        std::vector<int> next_actions(settings_.num_edges);
        for (int k = 0; k < settings_.num_edges; ++k) {
            next_actions[k] = target_action(k, next_state);
        }
        net.target_critic.forward(critic_input(e, next_state, next_actions), target_ws);
        const double y = t.rewards[e] + settings_.discount * target_ws.output[next_actions[e]];

        const auto state = to_double(t.state);
        net.critic.forward(critic_input(e, state, t.actions), ws);
        const double diff = ws.output[t.actions[e]] - y;
        loss += diff * diff * inv_b;
        if (grad) {
            std::fill(grad_out.begin(), grad_out.end(), 0.0);
            grad_out[t.actions[e]] = 2.0 * diff * inv_b;
            net.critic.backward(ws, grad_out, *grad, nullptr);
        }
    }
    return loss;
}

double MarlTrainer::actor_objective(int e, const std::vector<std::size_t>& batch,
                                    std::vector<double>* grad) const {
    // J = E[ sum_a pi_theta(a|o) Q(s, a, a_-e) ]: the exact expectation over the
    // agent's own discrete action, whose gradient is the log-likelihood
    // estimator in closed form.
    const auto& net = nets_[net_index(e)];
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    double objective = 0.0;
    Mlp::Workspace actor_ws, critic_ws;
    for (std::size_t j : batch) {
        const Transition& t = replay_.at(j);
        const auto state = to_double(t.state);
        net.critic.forward(critic_input(e, state, t.actions), critic_ws);
        const std::vector<double>& q = critic_ws.output;

        net.actor.forward(actor_input(e, state), actor_ws);
        const auto probs = softmax(actor_ws.output);
        double expected_q = 0.0;
        for (std::size_t a = 0; a < probs.size(); ++a) expected_q += probs[a] * q[a];
        objective += expected_q * inv_b;
        if (grad) {
            std::vector<double> dlogits(probs.size());
            for (std::size_t a = 0; a < probs.size(); ++a) {
                dlogits[a] = probs[a] * (q[a] - expected_q) * inv_b;
            }
            net.actor.backward(actor_ws, dlogits, *grad, nullptr);
        }
    }
    return objective;
}

void MarlTrainer::update(RngStream& rng) {
    if (!ready()) return;
    for (int e = 0; e < settings_.num_edges; ++e) {
        auto& net = nets_[net_index(e)];
        const auto batch =
            replay_.sample_indices(static_cast<std::size_t>(settings_.batch_size), rng);

        std::vector<double> cgrad(net.critic.param_count(), 0.0);
        critic_loss(e, batch, &cgrad);
        net.critic_opt.step(net.critic.params(), cgrad);

        std::vector<double> agrad(net.actor.param_count(), 0.0);
        actor_objective(e, batch, &agrad);
        for (double& g : agrad) g = -g;  // ascend the objective
        net.actor_opt.step(net.actor.params(), agrad);
    }
    soft_update_targets(settings_.target_tau);
}

void MarlTrainer::soft_update_targets(double tau) {
    for (auto& net : nets_) {
        soft_update(net.target_actor.params(), net.actor.params(), tau);
        soft_update(net.target_critic.params(), net.critic.params(), tau);
    }
}

void MarlTrainer::save(std::ostream& os) const {
    const std::uint64_t version = 1, count = nets_.size();
    os.write(reinterpret_cast<const char*>(&version), sizeof(version));
    os.write(reinterpret_cast<const char*>(&count), sizeof(count));
    for (const auto& net : nets_) {
        write_vec(os, net.actor.params());
        write_vec(os, net.critic.params());
        write_vec(os, net.target_actor.params());
        write_vec(os, net.target_critic.params());
        write_vec(os, net.actor_opt.accum());
        write_vec(os, net.critic_opt.accum());
    }
    replay_.save(os);
}

void MarlTrainer::load(std::istream& is) {
    std::uint64_t version = 0, count = 0;
    is.read(reinterpret_cast<char*>(&version), sizeof(version));
    is.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (version != 1) throw std::runtime_error("unsupported checkpoint version");
    if (count != nets_.size()) throw std::runtime_error("checkpoint agent count mismatch");
    for (auto& net : nets_) {
        read_vec(is, net.actor.params());
        read_vec(is, net.critic.params());
        read_vec(is, net.target_actor.params());
        read_vec(is, net.target_critic.params());
        read_vec(is, net.actor_opt.accum());
        read_vec(is, net.critic_opt.accum());
    }
    replay_.load(is);
}

}  // namespace mecsim
