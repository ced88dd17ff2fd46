#include "mecsim/mlp.hpp"

#include <algorithm>
#include <cmath>

namespace mecsim {

Mlp::Mlp(int in_dim, int hidden_dim, int out_dim)
    : in_dim_(in_dim), hidden_dim_(hidden_dim), out_dim_(out_dim) {
    params_.assign(b2() + out_dim_, 0.0);
}

void Mlp::init_params(RngStream& rng) {
    const double s1 = std::sqrt(6.0 / (in_dim_ + hidden_dim_));
    const double s2 = std::sqrt(6.0 / (hidden_dim_ + out_dim_));
    for (std::size_t i = w1(); i < b1(); ++i) params_[i] = rng.uniform(-s1, s1);
    for (std::size_t i = b1(); i < w2(); ++i) params_[i] = 0.0;
    for (std::size_t i = w2(); i < b2(); ++i) params_[i] = rng.uniform(-s2, s2);
    for (std::size_t i = b2(); i < params_.size(); ++i) params_[i] = 0.0;
}

void Mlp::forward(const std::vector<double>& x, Workspace& ws) const {
    ws.input = x;
    ws.hidden.assign(hidden_dim_, 0.0);
    ws.output.assign(out_dim_, 0.0);
    const double* W1 = params_.data() + w1();
    const double* B1 = params_.data() + b1();
    const double* W2 = params_.data() + w2();
    const double* B2 = params_.data() + b2();
    for (int h = 0; h < hidden_dim_; ++h) {
        double z = B1[h];
        const double* row = W1 + static_cast<std::size_t>(h) * in_dim_;
        for (int i = 0; i < in_dim_; ++i) z += row[i] * x[i];
        ws.hidden[h] = std::tanh(z);
    }
    for (int o = 0; o < out_dim_; ++o) {
        double z = B2[o];
        const double* row = W2 + static_cast<std::size_t>(o) * hidden_dim_;
        for (int h = 0; h < hidden_dim_; ++h) z += row[h] * ws.hidden[h];
        ws.output[o] = z;
    }
}

void Mlp::backward(const Workspace& ws, const std::vector<double>& grad_out,
                   std::vector<double>& grad, std::vector<double>* grad_input) const {
    const double* W1 = params_.data() + w1();
    const double* W2 = params_.data() + w2();
    double* gW1 = grad.data() + w1();
    double* gB1 = grad.data() + b1();
    double* gW2 = grad.data() + w2();
    double* gB2 = grad.data() + b2();

    std::vector<double> dhidden(hidden_dim_, 0.0);
    for (int o = 0; o < out_dim_; ++o) {
        const double g = grad_out[o];
        if (g == 0.0) continue;
        gB2[o] += g;
        double* grow = gW2 + static_cast<std::size_t>(o) * hidden_dim_;
        const double* row = W2 + static_cast<std::size_t>(o) * hidden_dim_;
        for (int h = 0; h < hidden_dim_; ++h) {
            grow[h] += g * ws.hidden[h];
            dhidden[h] += g * row[h];
        }
    }
    if (grad_input) grad_input->assign(in_dim_, 0.0);
    for (int h = 0; h < hidden_dim_; ++h) {
        const double dz = dhidden[h] * (1.0 - ws.hidden[h] * ws.hidden[h]);
        if (dz == 0.0) continue;
        gB1[h] += dz;
        double* grow = gW1 + static_cast<std::size_t>(h) * in_dim_;
        const double* row = W1 + static_cast<std::size_t>(h) * in_dim_;
        for (int i = 0; i < in_dim_; ++i) {
            grow[i] += dz * ws.input[i];
            if (grad_input) (*grad_input)[i] += dz * row[i];
        }
    }
}

void soft_update(std::vector<double>& target, const std::vector<double>& online, double tau) {
    for (std::size_t i = 0; i < target.size(); ++i) {
        target[i] = tau * online[i] + (1.0 - tau) * target[i];
    }
}

std::vector<double> softmax(const std::vector<double>& logits) {
    std::vector<double> out(logits.size());
    const double m = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - m);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

Optimizer::Optimizer(OptimizerKind kind, double lr, std::size_t param_count)
    : kind_(kind), lr_(lr) {
    if (kind_ == OptimizerKind::Adagrad) accum_.assign(param_count, 0.0);
}

void Optimizer::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (kind_ == OptimizerKind::Sgd) {
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr_ * grad[i];
        return;
    }
    constexpr double eps = 1e-8;
    for (std::size_t i = 0; i < params.size(); ++i) {
        accum_[i] += grad[i] * grad[i];
        params[i] -= lr_ * grad[i] / (std::sqrt(accum_[i]) + eps);
    }
}

}  // namespace mecsim
