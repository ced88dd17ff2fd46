#include "mecsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mecsim/channel.hpp"
#include "mecsim/rates.hpp"
#include "mecsim/serialize.hpp"
#include "mecsim/topology.hpp"

namespace mecsim {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::optional<BaselinePolicyKind> baseline_kind(Algorithm a) {
    switch (a) {
        case Algorithm::LruJt: return BaselinePolicyKind::Lru;
        case Algorithm::LfuJt: return BaselinePolicyKind::Lfu;
        case Algorithm::FifoJt: return BaselinePolicyKind::Fifo;
        default: return std::nullopt;
    }
}

bool is_learning(Algorithm a) {
    return a == Algorithm::MarlMabla || a == Algorithm::MarlSt || a == Algorithm::MarlJt ||
           a == Algorithm::SarlJt;
}

std::vector<std::vector<int>> random_initial_caches(int num_edges, int num_files,
                                                    int cache_slots, RngStream& rng) {
    std::vector<std::vector<int>> caches(num_edges);
    for (int e = 0; e < num_edges; ++e) {
        // partial Fisher-Yates over file ids
        std::vector<int> files(num_files);
        for (int f = 0; f < num_files; ++f) files[f] = f + 1;
        for (int i = 0; i < cache_slots; ++i) {
            const std::size_t j = i + rng.uniform_int(files.size() - i);
            std::swap(files[i], files[j]);
        }
        files.resize(cache_slots);
        caches[e] = files;
    }
    return caches;
}

}  // namespace

std::string csv_header() {
    return "iteration,seed,algorithm,total_delay_s,edge_delay_s,cloud_delay_s,hit_ratio,"
           "jt_fraction,mean_reward";
}

std::string csv_row(const MetricsRow& row) {
    std::ostringstream os;
    os << row.iteration << ',' << row.seed << ',' << row.algorithm << ','
       << fmt(row.total_delay_s) << ',' << fmt(row.edge_delay_s) << ','
       << fmt(row.cloud_delay_s) << ',' << fmt(row.hit_ratio) << ',' << fmt(row.jt_fraction)
       << ',' << fmt(row.mean_reward);
    return os.str();
}

Experiment::Experiment(const ExperimentConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      seed_(seed),
      learning_(is_learning(cfg.algorithm)),
      baseline_(baseline_kind(cfg.algorithm)),
      oracle_mode_(cfg.algorithm == Algorithm::Oracle),
      topo_rng_(RngStream(cfg.sim.rng_seed).substream(seed).substream(1)),
      env_rng_(RngStream(cfg.sim.rng_seed).substream(seed).substream(2)),
      learn_rng_(RngStream(cfg.sim.rng_seed).substream(seed).substream(3)),
      mabla_rng_(RngStream(cfg.sim.rng_seed).substream(seed).substream(4)),
      init_rng_(RngStream(cfg.sim.rng_seed).substream(seed).substream(5)) {
    cfg_.validate();

    for (int attempt = 0;; ++attempt) {
        try {
            topo_ = sample_topology(cfg_.sim, topo_rng_);
            break;
        } catch (const EmptyTopology&) {
            if (attempt >= 1000) throw;
        }
    }

    cache_ = CacheState::init(
        cfg_.sim.num_edges, cfg_.sim.num_files, cfg_.sim.cache_slots,
        random_initial_caches(cfg_.sim.num_edges, cfg_.sim.num_files, cfg_.sim.cache_slots,
                              init_rng_));
    automata_.assign(topo_.num_users(), {});
    // adaptive modes start at JT; pinned variants hold their mode throughout
    arms_ = uniform_arms(topo_.num_users(),
                         cfg_.algorithm == Algorithm::MarlSt ? Arm::St : Arm::Jt);
    total_marl_steps_ =
        static_cast<std::uint64_t>(cfg_.iterations) * static_cast<std::uint64_t>(cfg_.marl_steps);

    if (learning_) {
        MarlSettings settings;
        settings.num_edges = cfg_.sim.num_edges;
        settings.num_files = cfg_.sim.num_files;
        settings.cache_slots = cfg_.sim.cache_slots;
        settings.hidden_dim = cfg_.hidden_dim;
        settings.learning_rate = cfg_.learning_rate;
        settings.discount = cfg_.discount;
        settings.target_tau = cfg_.target_tau;
        settings.initial_epsilon = cfg_.initial_epsilon;
        settings.final_epsilon = cfg_.final_epsilon;
        settings.batch_size = cfg_.batch_size;
        settings.replay_capacity = cfg_.replay_capacity;
        settings.optimizer = cfg_.optimizer;
        settings.shared_agent = cfg_.algorithm == Algorithm::SarlJt;
        trainer_ = std::make_unique<MarlTrainer>(settings, init_rng_);
    }

    last_rewards_.assign(cfg_.sim.num_edges, 0.0);
    resample_snapshot();
}

void Experiment::resample_snapshot() {
    req_ = sample_requests(cfg_.sim, topo_, env_rng_);
    ch_ = sample_channels(cfg_.sim, topo_, env_rng_);
}

DelayReport Experiment::evaluate_current(const AssociationState& assoc) {
    DelayReport report = evaluate_delay(cache_, assoc, req_, ch_, cfg_.sim);
    last_report_ = report;
    for (int e = 0; e < cfg_.sim.num_edges; ++e) last_rewards_[e] = compute_reward(e, report);
    int jt = 0;
    for (auto m : assoc.mode)
        if (m == TransmissionMode::Jt) ++jt;
    last_jt_fraction_ = topo_.num_users() > 0
                            ? static_cast<double>(jt) / static_cast<double>(topo_.num_users())
                            : 0.0;
    return report;
}

void Experiment::enforce_constraints(const AssociationState& assoc) const {
    const auto violations = check_constraints(cache_, assoc, ch_, cfg_.sim);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "constraint violations at iteration " << iteration_ << ":";
    for (const auto& v : violations) os << ' ' << v.constraint << " (" << v.detail << ")";
    throw std::runtime_error(os.str());
}

void Experiment::marl_phase_step() {
    const auto state = encode_state(topo_, req_, cache_, cfg_.sim.num_files);
    const double progress = total_marl_steps_ > 1
                                ? static_cast<double>(marl_step_count_) /
                                      static_cast<double>(total_marl_steps_ - 1)
                                : 1.0;
    const auto actions = trainer_->select_actions(state, progress, learn_rng_);
    for (int e = 0; e < cfg_.sim.num_edges; ++e) {
        apply_cache_action(cache_, e,
                           decode_action(actions[e], cfg_.sim.num_files, cfg_.sim.cache_slots));
    }

    const AssociationState assoc = build_association(topo_, cache_, req_, ch_, arms_);
    allocate_powers(cfg_.sim, topo_, assoc, ch_);
    evaluate_current(assoc);
    enforce_constraints(assoc);

    Transition t;
    t.state.assign(state.begin(), state.end());
    t.actions = actions;
    t.rewards = last_rewards_;
    resample_snapshot();
    const auto next_state = encode_state(topo_, req_, cache_, cfg_.sim.num_files);
    t.next_state.assign(next_state.begin(), next_state.end());
    trainer_->store(std::move(t));

    ++marl_step_count_;
    if (marl_step_count_ % static_cast<std::uint64_t>(cfg_.update_every) == 0) {
        trainer_->update(learn_rng_);
    }
}

void Experiment::baseline_phase_step() {
    for (int u = 0; u < topo_.num_users(); ++u) {
        for (int e : topo_.covering_edges[u]) {
            baseline_update(*baseline_, cache_, e, req_.requested_file[u], ++tick_);
        }
    }
    const AssociationState assoc = build_association(topo_, cache_, req_, ch_, arms_);
    allocate_powers(cfg_.sim, topo_, assoc, ch_);
    evaluate_current(assoc);
    enforce_constraints(assoc);
    resample_snapshot();
}

void Experiment::mabla_phase_step() {
    if (baseline_) {
        // fixed caches still demand-fill on every request
        for (int u = 0; u < topo_.num_users(); ++u) {
            for (int e : topo_.covering_edges[u]) {
                baseline_update(*baseline_, cache_, e, req_.requested_file[u], ++tick_);
            }
        }
    }

    if (cfg_.algorithm == Algorithm::MarlMabla) {
        MablaRoundResult round = mabla_round(topo_, cache_, req_, ch_, cfg_.sim, automata_,
                                             mabla_rng_);
        arms_ = round.arms;
        mabla_history_.push_back(std::move(round.outcomes));
        evaluate_current(round.assoc);
        enforce_constraints(round.assoc);
    } else {
        const Arm pinned = cfg_.algorithm == Algorithm::MarlSt ? Arm::St : Arm::Jt;
        const auto arms = uniform_arms(topo_.num_users(), pinned);
        const AssociationState assoc = build_association(topo_, cache_, req_, ch_, arms);
        allocate_powers(cfg_.sim, topo_, assoc, ch_);
        evaluate_current(assoc);
        enforce_constraints(assoc);
    }
    resample_snapshot();
}

MetricsRow Experiment::run_iteration() {
    // first step: caching updates
    for (int t = 0; t < cfg_.marl_steps; ++t) {
        if (oracle_mode_) {
            resample_snapshot();
        } else if (learning_) {
            marl_phase_step();
        } else {
            baseline_phase_step();
        }
    }

    // second step: transmission rounds
    if (cfg_.beta_reinit_per_iteration) automata_.assign(topo_.num_users(), {});
    for (int t = 0; t < cfg_.mabla_steps; ++t) {
        if (oracle_mode_) {
            if (t + 1 == cfg_.mabla_steps) {
                OracleBudget budget{cfg_.oracle_max_configs};
                OracleResult res = oracle_joint(cfg_.sim, topo_, req_, ch_, budget);
                allocate_powers(cfg_.sim, topo_, res.assoc, ch_);
                const CacheState saved = cache_;
                cache_ = res.cache;
                evaluate_current(res.assoc);
                cache_ = saved;
            }
            resample_snapshot();
        } else {
            mabla_phase_step();
        }
    }

    MetricsRow row;
    row.iteration = ++iteration_;
    row.seed = seed_;
    row.algorithm = algorithm_name(cfg_.algorithm);
    row.total_delay_s = last_report_.total_s;
    row.edge_delay_s = last_report_.edge_delay_s;
    row.cloud_delay_s = last_report_.cloud_delay_s;
    const int served = last_report_.hit_count + last_report_.miss_count;
    row.hit_ratio = served > 0 ? static_cast<double>(last_report_.hit_count) / served : 0.0;
    row.jt_fraction = last_jt_fraction_;
    double reward_sum = 0;
    for (double r : last_rewards_) reward_sum += r;
    row.mean_reward = last_rewards_.empty() ? 0.0 : reward_sum / last_rewards_.size();
    return row;
}

std::vector<MetricsRow> Experiment::run(std::ostream* csv) {
    std::vector<MetricsRow> rows;
    if (csv && iteration_ == 0) *csv << csv_header() << '\n' << std::flush;
    while (iteration_ < cfg_.iterations) {
        rows.push_back(run_iteration());
        if (csv) *csv << csv_row(rows.back()) << '\n' << std::flush;
    }
    return rows;
}

void Experiment::save_checkpoint(std::ostream& os) const {
    io::write_string(os, "MECSIM-CKPT");
    io::write_pod(os, std::uint32_t{1});
    io::write_pod(os, seed_);
    io::write_pod(os, iteration_);
    io::write_pod(os, marl_step_count_);
    io::write_pod(os, tick_);
    io::write_string(os, env_rng_.serialize());
    io::write_string(os, learn_rng_.serialize());
    io::write_string(os, mabla_rng_.serialize());
    io::write_vec2(os, cache_.slots);
    io::write_vec2(os, cache_.last_used);
    io::write_vec2(os, cache_.use_count);
    io::write_vec2(os, cache_.inserted_at);
    std::vector<int> arm_ints(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) arm_ints[i] = static_cast<int>(arms_[i]);
    io::write_vec(os, arm_ints);
    io::write_vec(os, automata_);
    io::write_vec(os, req_.requested_file);
    io::write_vec2(os, ch_.h_edge);
    io::write_vec(os, ch_.h_cloud);
    io::write_vec2(os, ch_.p_edge);
    io::write_vec(os, ch_.p_cloud);
    io::write_vec2(os, ch_.sic_order);
    io::write_pod(os, static_cast<std::uint64_t>(mabla_history_.size()));
    for (const auto& round : mabla_history_) io::write_vec(os, round);
    io::write_pod(os, static_cast<std::uint8_t>(learning_ ? 1 : 0));
    if (learning_) trainer_->save(os);
}

void Experiment::load_checkpoint(std::istream& is) {
    std::string magic;
    io::read_string(is, magic);
    if (magic != "MECSIM-CKPT") throw std::runtime_error("not a checkpoint file");
    std::uint32_t version = 0;
    io::read_pod(is, version);
    if (version != 1) throw std::runtime_error("unsupported checkpoint version");
    io::read_pod(is, seed_);
    io::read_pod(is, iteration_);
    io::read_pod(is, marl_step_count_);
    io::read_pod(is, tick_);
    std::string s;
    io::read_string(is, s);
    env_rng_ = RngStream::deserialize(s);
    io::read_string(is, s);
    learn_rng_ = RngStream::deserialize(s);
    io::read_string(is, s);
    mabla_rng_ = RngStream::deserialize(s);
    io::read_vec2(is, cache_.slots);
    io::read_vec2(is, cache_.last_used);
    io::read_vec2(is, cache_.use_count);
    io::read_vec2(is, cache_.inserted_at);
    std::vector<int> arm_ints;
    io::read_vec(is, arm_ints);
    arms_.resize(arm_ints.size());
    for (std::size_t i = 0; i < arm_ints.size(); ++i) arms_[i] = static_cast<Arm>(arm_ints[i]);
    io::read_vec(is, automata_);
    io::read_vec(is, req_.requested_file);
    io::read_vec2(is, ch_.h_edge);
    io::read_vec(is, ch_.h_cloud);
    io::read_vec2(is, ch_.p_edge);
    io::read_vec(is, ch_.p_cloud);
    io::read_vec2(is, ch_.sic_order);
    std::uint64_t rounds = 0;
    io::read_pod(is, rounds);
    mabla_history_.assign(rounds, {});
    for (auto& round : mabla_history_) io::read_vec(is, round);
    std::uint8_t has_trainer = 0;
    io::read_pod(is, has_trainer);
    if (has_trainer) {
        if (!trainer_) throw std::runtime_error("checkpoint has trainer state but config does not");
        trainer_->load(is);
    }
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                                       std::ostream* csv) {
    Experiment exp(cfg, seed);
    return exp.run(csv);
}

std::vector<MetricsRow> run_all_seeds(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const std::string alg = algorithm_name(cfg.algorithm);
    std::vector<MetricsRow> all;
    std::vector<std::string> replica_files;
    for (std::uint64_t seed : cfg.seeds) {
        const std::string path = cfg.out_dir + "/" + alg + "_seed" + std::to_string(seed) + ".csv";
        std::ofstream csv(path);
        auto rows = run_experiment(cfg, seed, &csv);
        all.insert(all.end(), rows.begin(), rows.end());
        replica_files.push_back(path);
    }
    std::ofstream merged(cfg.out_dir + "/" + alg + ".csv");
    merged << csv_header() << '\n';
    for (const auto& path : replica_files) {
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);  // skip header
        while (std::getline(in, line)) merged << line << '\n';
    }
    return all;
}

std::vector<SuiteSummaryRow> summarize(const std::vector<MetricsRow>& rows, int final_window) {
    int max_iter = 0;
    for (const auto& r : rows) max_iter = std::max(max_iter, r.iteration);
    const int cutoff = max_iter - final_window;

    // per (algorithm, seed) final-window mean
    std::map<std::string, std::map<std::uint64_t, std::pair<double, int>>> acc;
    for (const auto& r : rows) {
        if (r.iteration <= cutoff) continue;
        auto& cell = acc[r.algorithm][r.seed];
        cell.first += r.total_delay_s;
        cell.second += 1;
    }
    std::vector<SuiteSummaryRow> out;
    for (const auto& [alg, seeds] : acc) {
        std::vector<double> means;
        for (const auto& [seed, cell] : seeds) means.push_back(cell.first / cell.second);
        std::sort(means.begin(), means.end());
        SuiteSummaryRow row;
        row.algorithm = alg;
        row.seeds = static_cast<int>(means.size());
        double sum = 0;
        for (double m : means) sum += m;
        row.final_window_mean = sum / means.size();
        const auto quantile = [&](double q) {
            const double pos = q * (means.size() - 1);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, means.size() - 1);
            return means[lo] + (pos - lo) * (means[hi] - means[lo]);
        };
        row.final_window_iqr = quantile(0.75) - quantile(0.25);
        out.push_back(row);
    }
    return out;
}

SuiteResult run_suite(const std::vector<ExperimentConfig>& configs) {
    SuiteResult result;
    if (configs.empty()) return result;

    const auto& ref = configs.front().sim;
    for (const auto& cfg : configs) {
        const auto& s = cfg.sim;
        const bool same = s.num_edges == ref.num_edges && s.num_files == ref.num_files &&
                          s.cache_slots == ref.cache_slots &&
                          s.file_size_bits == ref.file_size_bits &&
                          s.cell_radius_m == ref.cell_radius_m &&
                          s.user_density_per_km2 == ref.user_density_per_km2 &&
                          s.zipf_skew == ref.zipf_skew && s.path_loss == ref.path_loss &&
                          s.bandwidth_edge_hz == ref.bandwidth_edge_hz &&
                          s.bandwidth_cloud_hz == ref.bandwidth_cloud_hz &&
                          s.cloud_distance_m == ref.cloud_distance_m &&
                          s.peak_power_w == ref.peak_power_w &&
                          s.noise_power_w == ref.noise_power_w &&
                          s.fixed_users == ref.fixed_users && s.rng_seed == ref.rng_seed;
        if (!same) throw ConfigError("suite configs must share the same simulation parameters");
    }

    for (const auto& cfg : configs) {
        auto rows = run_all_seeds(cfg);
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    const int window = std::min(100, configs.front().iterations);
    result.summary = summarize(result.rows, window);

    std::ofstream summary(configs.front().out_dir + "/summary.csv");
    summary << "algorithm,final_window_mean_delay_s,final_window_iqr_s,seeds\n";
    for (const auto& row : result.summary) {
        summary << row.algorithm << ',' << fmt(row.final_window_mean) << ','
                << fmt(row.final_window_iqr) << ',' << row.seeds << '\n';
    }
    return result;
}

}  // namespace mecsim
