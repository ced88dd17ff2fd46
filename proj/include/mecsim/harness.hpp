#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mecsim/baselines.hpp"
#include "mecsim/config.hpp"
#include "mecsim/mabla.hpp"
#include "mecsim/marl.hpp"
#include "mecsim/oracle.hpp"

namespace mecsim {

struct MetricsRow {
    int iteration = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
    double total_delay_s = 0;
    double edge_delay_s = 0;
    double cloud_delay_s = 0;
    double hit_ratio = 0;
    double jt_fraction = 0;
    double mean_reward = 0;
};

std::string csv_header();
std::string csv_row(const MetricsRow& row);

// One replica of the two-phase iteration loop: N_t1 caching steps (action
// selection, cache update, transition storage, per-agent learning, target
// mixing) followed by N_t2 transmission rounds, with metrics taken from the
// final step of each iteration.
class Experiment {
public:
    Experiment(const ExperimentConfig& cfg, std::uint64_t seed);

    MetricsRow run_iteration();
    std::vector<MetricsRow> run(std::ostream* csv = nullptr);

    int current_iteration() const { return iteration_; }
    const NetworkTopology& topology() const { return topo_; }
    const CacheState& cache() const { return cache_; }
    const std::vector<AutomatonState>& automata() const { return automata_; }
    const std::vector<std::vector<ArmOutcome>>& mabla_history() const { return mabla_history_; }
    const std::vector<Arm>& current_arms() const { return arms_; }
    MarlTrainer* trainer() { return trainer_.get(); }

    void save_checkpoint(std::ostream& os) const;
    void load_checkpoint(std::istream& is);

private:
    void marl_phase_step();
    void baseline_phase_step();
    void mabla_phase_step();
    void resample_snapshot();
    DelayReport evaluate_current(const AssociationState& assoc);
    void enforce_constraints(const AssociationState& assoc) const;

    ExperimentConfig cfg_;
    std::uint64_t seed_;
    bool learning_;                         // MARL / SARL variants
    std::optional<BaselinePolicyKind> baseline_;
    bool oracle_mode_ = false;

    RngStream topo_rng_, env_rng_, learn_rng_, mabla_rng_, init_rng_;
    NetworkTopology topo_;
    CacheState cache_;
    std::vector<AutomatonState> automata_;
    std::vector<Arm> arms_;  // most recent modes; multi-covered start at JT
    std::unique_ptr<MarlTrainer> trainer_;

    RequestState req_;
    ChannelSnapshot ch_;
    int iteration_ = 0;
    std::uint64_t marl_step_count_ = 0;
    std::uint64_t total_marl_steps_ = 0;
    std::uint64_t tick_ = 0;

    DelayReport last_report_;
    std::vector<double> last_rewards_;
    double last_jt_fraction_ = 0;
    std::vector<std::vector<ArmOutcome>> mabla_history_;
};

std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                                       std::ostream* csv = nullptr);

// Runs every seed of the config, one CSV per replica under cfg.out_dir, then
// merges them into <algorithm>.csv. Returns all rows.
std::vector<MetricsRow> run_all_seeds(const ExperimentConfig& cfg);

struct SuiteSummaryRow {
    std::string algorithm;
    double final_window_mean = 0;   // mean over seeds of per-seed final-window mean
    double final_window_iqr = 0;    // across seeds
    int seeds = 0;
};

struct SuiteResult {
    std::vector<MetricsRow> rows;
    std::vector<SuiteSummaryRow> summary;
};

// Configs must share the same SimConfig for a fair comparison.
SuiteResult run_suite(const std::vector<ExperimentConfig>& configs);

std::vector<SuiteSummaryRow> summarize(const std::vector<MetricsRow>& rows, int final_window);

}  // namespace mecsim
