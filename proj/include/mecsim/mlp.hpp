#pragma once

#include <cstddef>
#include <vector>

#include "mecsim/config.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

// One-hidden-layer tanh network over a flat parameter vector. The flat layout
// makes soft target mixing, checkpointing and finite-difference probing
// uniform across actors and critics.
class Mlp {
public:
    Mlp() = default;
    Mlp(int in_dim, int hidden_dim, int out_dim);

    void init_params(RngStream& rng);

    // Activations saved by forward() and consumed by backward().
    struct Workspace {
        std::vector<double> input;
        std::vector<double> hidden;  // tanh activations
        std::vector<double> output;
    };

    void forward(const std::vector<double>& x, Workspace& ws) const;

    // Accumulates dL/dparams into grad (same layout as params); grad_input may
    // be null when input gradients are not needed.
    void backward(const Workspace& ws, const std::vector<double>& grad_out,
                  std::vector<double>& grad, std::vector<double>* grad_input) const;

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    std::size_t param_count() const { return params_.size(); }
    int in_dim() const { return in_dim_; }
    int out_dim() const { return out_dim_; }
    int hidden_dim() const { return hidden_dim_; }

private:
    int in_dim_ = 0;
    int hidden_dim_ = 0;
    int out_dim_ = 0;
    std::vector<double> params_;

    // layout offsets
    std::size_t w1() const { return 0; }
    std::size_t b1() const { return static_cast<std::size_t>(hidden_dim_) * in_dim_; }
    std::size_t w2() const { return b1() + hidden_dim_; }
    std::size_t b2() const { return w2() + static_cast<std::size_t>(out_dim_) * hidden_dim_; }
};

// Soft update: target <- tau * online + (1 - tau) * target.
void soft_update(std::vector<double>& target, const std::vector<double>& online, double tau);

// In-place softmax over logits.
std::vector<double> softmax(const std::vector<double>& logits);

// Plain gradient ascent/descent or momentum-free adaptive steps.
class Optimizer {
public:
    Optimizer(OptimizerKind kind, double lr, std::size_t param_count);

    // params <- params - lr * grad (pass negated gradients to ascend)
    void step(std::vector<double>& params, const std::vector<double>& grad);

    OptimizerKind kind() const { return kind_; }
    std::vector<double>& accum() { return accum_; }
    const std::vector<double>& accum() const { return accum_; }

private:
    OptimizerKind kind_;
    double lr_;
    std::vector<double> accum_;  // adagrad-style squared-gradient accumulator
};

}  // namespace mecsim
