#pragma once

#include <array>
#include <vector>

#include "mecsim/association.hpp"
#include "mecsim/config.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/state.hpp"
#include "mecsim/topology.hpp"

namespace mecsim {

// Beta posteriors for the two arms (Arm 0 = ST, Arm 1 = JT) of one user.
struct AutomatonState {
    double alpha0 = 1.0;
    double beta0 = 1.0;
    double alpha1 = 1.0;
    double beta1 = 1.0;

    double posterior_mean(Arm arm) const {
        return arm == Arm::St ? alpha0 / (alpha0 + beta0) : alpha1 / (alpha1 + beta1);
    }
};

struct ArmOutcome {
    bool participated = false;  // multi-covered and non-degenerate this round
    Arm chosen_arm = Arm::St;
    bool reward = false;  // chosen delay <= counterfactual delay
    bool degenerate = false;
    double chosen_delay_s = 0;
    double counterfactual_delay_s = 0;

    Arm optimal_arm() const {
        if (reward) return chosen_arm;
        return chosen_arm == Arm::St ? Arm::Jt : Arm::St;
    }
};

// Thompson-style draw: sample both posteriors, Arm 0 iff X0 > X1.
Arm bla_select(const AutomatonState& state, RngStream& rng);

// Compares user u's delay under the chosen arm against the counterfactual arm
// with every other user's mode held fixed (powers reallocated per association).
// Equal delays count as a reward. If no covering server caches u's file both
// arms degenerate to the cloud and no update is produced.
ArmOutcome evaluate_feedback(int u, Arm chosen, const NetworkTopology& topo,
                             const CacheState& cache, const RequestState& req,
                             const ChannelSnapshot& ch, const SimConfig& cfg,
                             std::vector<Arm> arms);

// Eq-style +1 update on the chosen arm; degenerate outcomes leave the state
// untouched.
void bla_update(AutomatonState& state, const ArmOutcome& outcome);

struct MablaRoundResult {
    AssociationState assoc;
    std::vector<ArmOutcome> outcomes;  // per user
    std::vector<Arm> arms;             // per user (ST for non-multi-covered)
};

// One transmission round: arms drawn in ascending user order, association
// built, feedback evaluated against the frozen arm assignment, automata
// updated. `ch` gets its powers reallocated for the returned association.
MablaRoundResult mabla_round(const NetworkTopology& topo, const CacheState& cache,
                             const RequestState& req, ChannelSnapshot& ch,
                             const SimConfig& cfg, std::vector<AutomatonState>& automata,
                             RngStream& rng);

struct ConvergenceDiagnostics {
    std::vector<std::array<double, 2>> posterior_mean;  // per user, per arm
    std::vector<double> optimal_arm_frequency;          // per user over history
    double p_star = 1.0;  // product of per-user optimal-arm frequencies
};

ConvergenceDiagnostics convergence_report(const std::vector<AutomatonState>& automata,
                                          const std::vector<std::vector<ArmOutcome>>& history);

}  // namespace mecsim
