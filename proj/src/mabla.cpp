#include "mecsim/mabla.hpp"

#include "mecsim/channel.hpp"
#include "mecsim/rates.hpp"

namespace mecsim {

Arm bla_select(const AutomatonState& state, RngStream& rng) {
    const double x0 = rng.beta(state.alpha0, state.beta0);
    const double x1 = rng.beta(state.alpha1, state.beta1);
    return x0 > x1 ? Arm::St : Arm::Jt;
}

namespace {

double delay_under_arms(int u, const NetworkTopology& topo, const CacheState& cache,
                        const RequestState& req, const ChannelSnapshot& ch,
                        const SimConfig& cfg, const std::vector<Arm>& arms) {
    const AssociationState assoc = build_association(topo, cache, req, ch, arms);
    ChannelSnapshot local = ch;
    allocate_powers(cfg, topo, assoc, local);
    return user_delay(u, cache, assoc, req, local, cfg);
}

}  // namespace

ArmOutcome evaluate_feedback(int u, Arm chosen, const NetworkTopology& topo,
                             const CacheState& cache, const RequestState& req,
                             const ChannelSnapshot& ch, const SimConfig& cfg,
                             std::vector<Arm> arms) {
    ArmOutcome out;
    out.chosen_arm = chosen;

    bool any_holder = false;
    for (int e : topo.covering_edges[u]) {
        if (cache.cached(e, req.requested_file[u])) {
            any_holder = true;
            break;
        }
    }
    if (!any_holder) {
        out.degenerate = true;
        return out;
    }

    arms[u] = chosen;
    out.chosen_delay_s = delay_under_arms(u, topo, cache, req, ch, cfg, arms);
    arms[u] = chosen == Arm::St ? Arm::Jt : Arm::St;
    out.counterfactual_delay_s = delay_under_arms(u, topo, cache, req, ch, cfg, arms);
    out.reward = out.chosen_delay_s <= out.counterfactual_delay_s;
    out.participated = true;
    return out;
}

void bla_update(AutomatonState& state, const ArmOutcome& outcome) {
    if (outcome.degenerate || !outcome.participated) return;
    if (outcome.chosen_arm == Arm::St) {
        if (outcome.reward) state.alpha0 += 1.0;
        else state.beta0 += 1.0;
    } else {
        if (outcome.reward) state.alpha1 += 1.0;
        else state.beta1 += 1.0;
    }
}

MablaRoundResult mabla_round(const NetworkTopology& topo, const CacheState& cache,
                             const RequestState& req, ChannelSnapshot& ch,
                             const SimConfig& cfg, std::vector<AutomatonState>& automata,
                             RngStream& rng) {
    const int U = topo.num_users();
    MablaRoundResult result;
    result.arms.assign(U, Arm::St);
    result.outcomes.assign(U, {});

    for (int u = 0; u < U; ++u) {
        if (topo.multi_covered(u)) result.arms[u] = bla_select(automata[u], rng);
    }

    result.assoc = build_association(topo, cache, req, ch, result.arms);
    allocate_powers(cfg, topo, result.assoc, ch);

    for (int u = 0; u < U; ++u) {
        if (!topo.multi_covered(u)) continue;
        result.outcomes[u] =
            evaluate_feedback(u, result.arms[u], topo, cache, req, ch, cfg, result.arms);
        bla_update(automata[u], result.outcomes[u]);
    }
    return result;
}

ConvergenceDiagnostics convergence_report(const std::vector<AutomatonState>& automata,
                                          const std::vector<std::vector<ArmOutcome>>& history) {
    ConvergenceDiagnostics diag;
    const std::size_t U = automata.size();
    diag.posterior_mean.resize(U);
    diag.optimal_arm_frequency.assign(U, 0.0);
    for (std::size_t u = 0; u < U; ++u) {
        diag.posterior_mean[u] = {automata[u].posterior_mean(Arm::St),
                                  automata[u].posterior_mean(Arm::Jt)};
    }
    std::vector<std::size_t> rounds(U, 0);
    std::vector<std::size_t> optimal_chosen(U, 0);
    for (const auto& round : history) {
        for (std::size_t u = 0; u < round.size() && u < U; ++u) {
            const ArmOutcome& o = round[u];
            if (!o.participated) continue;
            ++rounds[u];
            if (o.chosen_arm == o.optimal_arm()) ++optimal_chosen[u];
        }
    }
    for (std::size_t u = 0; u < U; ++u) {
        if (rounds[u] > 0) {
            diag.optimal_arm_frequency[u] =
                static_cast<double>(optimal_chosen[u]) / static_cast<double>(rounds[u]);
            diag.p_star *= diag.optimal_arm_frequency[u];
        }
    }
    return diag;
}

}  // namespace mecsim
