#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mecsim/channel.hpp"
#include "mecsim/harness.hpp"
#include "mecsim/rates.hpp"
#include "mecsim/topology.hpp"
#include "mecsim/zipf.hpp"

namespace fs = std::filesystem;

namespace {

void print_summary(const std::vector<mecsim::SuiteSummaryRow>& summary) {
    std::cout << "algorithm            mean_final_delay_s   iqr_s      seeds\n";
    for (const auto& row : summary) {
        std::printf("%-20s %-20.6g %-10.4g %d\n", row.algorithm.c_str(), row.final_window_mean,
                    row.final_window_iqr, row.seeds);
    }
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, const std::string& resume_path,
            const std::string& checkpoint_path) {
    auto cfg = mecsim::parse_config(config_path);
    if (seed) cfg.seeds = {*seed};
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    if (!resume_path.empty() || !checkpoint_path.empty()) {
        if (cfg.seeds.size() != 1) {
            std::cerr << "checkpoint/resume requires a single seed\n";
            return 1;
        }
        fs::create_directories(cfg.out_dir);
        const std::string alg = mecsim::algorithm_name(cfg.algorithm);
        mecsim::Experiment exp(cfg, cfg.seeds[0]);
        if (!resume_path.empty()) {
            std::ifstream in(resume_path, std::ios::binary);
            if (!in) {
                std::cerr << "cannot open checkpoint: " << resume_path << "\n";
                return 1;
            }
            exp.load_checkpoint(in);
        }
        const std::string csv_path =
            cfg.out_dir + "/" + alg + "_seed" + std::to_string(cfg.seeds[0]) + ".csv";
        std::ofstream csv(csv_path, resume_path.empty() ? std::ios::out : std::ios::app);
        exp.run(&csv);
        if (!checkpoint_path.empty()) {
            std::ofstream out(checkpoint_path, std::ios::binary);
            exp.save_checkpoint(out);
        }
        std::cout << "wrote " << csv_path << "\n";
        return 0;
    }

    auto rows = mecsim::run_all_seeds(cfg);
    print_summary(mecsim::summarize(rows, std::min(100, cfg.iterations)));
    return 0;
}

int cmd_suite(const std::string& config_path, const std::string& algorithms,
              const std::string& out_dir) {
    auto base = mecsim::parse_config(config_path);
    if (!out_dir.empty()) base.out_dir = out_dir;
    std::vector<mecsim::ExperimentConfig> configs;
    std::istringstream ss(algorithms);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        auto cfg = base;
        cfg.algorithm = mecsim::algorithm_from_name(name);
        configs.push_back(cfg);
    }
    auto result = mecsim::run_suite(configs);
    print_summary(result.summary);
    std::cout << "summary written to " << base.out_dir << "/summary.csv\n";
    return 0;
}

int cmd_oracle(const std::string& config_path, std::optional<std::uint64_t> seed) {
    auto cfg = mecsim::parse_config(config_path);
    const std::uint64_t s = seed.value_or(cfg.seeds[0]);
    auto base = mecsim::RngStream(cfg.sim.rng_seed).substream(s);
    auto topo_rng = base.substream(1);
    auto env_rng = base.substream(2);
    const auto topo = mecsim::sample_topology(cfg.sim, topo_rng);
    const auto req = mecsim::sample_requests(cfg.sim, topo, env_rng);
    const auto ch = mecsim::sample_channels(cfg.sim, topo, env_rng);
    mecsim::OracleBudget budget{cfg.oracle_max_configs};
    try {
        const auto result = mecsim::oracle_joint(cfg.sim, topo, req, ch, budget);
        std::cout << "optimal total delay: " << result.total_delay_s << " s\n";
        for (int e = 0; e < topo.num_edges(); ++e) {
            std::cout << "edge " << e << " caches:";
            for (int f : result.cache.slots[e]) std::cout << ' ' << f;
            std::cout << '\n';
        }
        for (int u = 0; u < topo.num_users(); ++u) {
            if (!topo.multi_covered(u)) continue;
            std::cout << "user " << u << ": "
                      << (result.arms[u] == mecsim::Arm::Jt ? "JT" : "ST") << '\n';
        }
        return 0;
    } catch (const mecsim::OracleBudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

int cmd_report(const std::string& in_dir) {
    std::vector<mecsim::MetricsRow> rows;
    for (const auto& entry : fs::directory_iterator(in_dir)) {
        if (entry.path().extension() != ".csv") continue;
        if (entry.path().filename() == "summary.csv") continue;
        std::ifstream in(entry.path());
        std::string line;
        std::getline(in, line);
        if (line != mecsim::csv_header()) continue;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string field;
            mecsim::MetricsRow row;
            std::getline(ls, field, ',');
            row.iteration = std::stoi(field);
            std::getline(ls, field, ',');
            row.seed = std::stoull(field);
            std::getline(ls, row.algorithm, ',');
            std::getline(ls, field, ',');
            row.total_delay_s = std::stod(field);
            std::getline(ls, field, ',');
            row.edge_delay_s = std::stod(field);
            std::getline(ls, field, ',');
            row.cloud_delay_s = std::stod(field);
            std::getline(ls, field, ',');
            row.hit_ratio = std::stod(field);
            std::getline(ls, field, ',');
            row.jt_fraction = std::stod(field);
            std::getline(ls, field, ',');
            row.mean_reward = std::stod(field);
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        std::cerr << "no metric CSVs found in " << in_dir << "\n";
        return 1;
    }
    int max_iter = 0;
    for (const auto& r : rows) max_iter = std::max(max_iter, r.iteration);
    print_summary(mecsim::summarize(rows, std::min(100, max_iter)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge caching and transmission simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_dir, resume_path, checkpoint_path;
    std::optional<std::uint64_t> seed;
    std::string algorithms =
        "MARL-MABLA,MARL-ST,MARL-JT,SARL-JT,LRU-JT,LFU-JT,FIFO-JT";

    auto* run = app.add_subcommand("run", "run one algorithm over its seeds");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--seed", seed, "override the seed list with one seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--resume", resume_path, "resume from a checkpoint file");
    run->add_option("--checkpoint-out", checkpoint_path, "write a checkpoint when done");

    auto* suite = app.add_subcommand("suite", "run several algorithms for comparison");
    suite->add_option("--config", config_path, "config file")->required();
    suite->add_option("--algorithms", algorithms, "comma-separated algorithm list");
    suite->add_option("--out", out_dir, "output directory");

    auto* oracle = app.add_subcommand("oracle", "brute-force optimum on one snapshot");
    oracle->add_option("--config", config_path, "config file")->required();
    oracle->add_option("--seed", seed, "snapshot seed");

    auto* report = app.add_subcommand("report", "summarize metric CSVs");
    report->add_option("--in", in_dir, "directory of CSV files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, out_dir, resume_path, checkpoint_path);
        if (suite->parsed()) return cmd_suite(config_path, algorithms, out_dir);
        if (oracle->parsed()) return cmd_oracle(config_path, seed);
        if (report->parsed()) return cmd_report(in_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
