#include "mecsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace mecsim {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': expected a number, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("field '" + key + "': expected true/false, got '" + value + "'");
}

}  // namespace

void SimConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(num_edges >= 1, "field 'num_edges': must be >= 1");
    require(num_files >= 1, "field 'num_files': must be >= 1");
    require(cache_slots >= 1, "field 'cache_slots': must be >= 1");
    require(cache_slots < num_files, "field 'cache_slots': must be < num_files");
    require(file_size_bits > 0, "field 'file_size_bits': must be > 0");
    require(cell_radius_m > 0, "field 'cell_radius_m': must be > 0");
    require(user_density_per_km2 > 0, "field 'user_density_per_km2': must be > 0");
    require(zipf_skew >= 0, "field 'zipf_skew': must be >= 0");
    require(path_loss > 0, "field 'path_loss': must be > 0");
    require(bandwidth_edge_hz > 0, "field 'bandwidth_edge_hz': must be > 0");
    require(bandwidth_cloud_hz > 0, "field 'bandwidth_cloud_hz': must be > 0");
    require(cloud_distance_m > 0, "field 'cloud_distance_m': must be > 0");
    require(peak_power_w > 0, "field 'peak_power_w': must be > 0");
    require(noise_power_w > 0, "field 'noise_power_w': must be > 0");
    require(fixed_users >= 0, "field 'fixed_users': must be >= 0");
}

void ExperimentConfig::validate() const {
    sim.validate();
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(iterations >= 1, "field 'iterations': must be >= 1");
    require(marl_steps >= 1, "field 'marl_steps': must be >= 1");
    require(mabla_steps >= 1, "field 'mabla_steps': must be >= 1");
    require(replay_capacity >= 1, "field 'replay_capacity': must be >= 1");
    require(learning_rate > 0, "field 'learning_rate': must be > 0");
    require(target_tau > 0 && target_tau <= 1, "field 'target_tau': must be in (0, 1]");
    require(discount >= 0 && discount < 1, "field 'discount': must be in [0, 1)");
    require(initial_epsilon >= 0 && initial_epsilon <= 1, "field 'initial_epsilon': must be in [0, 1]");
    require(final_epsilon >= 0 && final_epsilon <= 1, "field 'final_epsilon': must be in [0, 1]");
    require(batch_size >= 1, "field 'batch_size': must be >= 1");
    require(hidden_dim >= 1, "field 'hidden_dim': must be >= 1");
    require(update_every >= 1, "field 'update_every': must be >= 1");
    require(!seeds.empty(), "field 'seeds': must not be empty");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::MarlMabla: return "MARL-MABLA";
        case Algorithm::MarlSt: return "MARL-ST";
        case Algorithm::MarlJt: return "MARL-JT";
        case Algorithm::SarlJt: return "SARL-JT";
        case Algorithm::LruJt: return "LRU-JT";
        case Algorithm::LfuJt: return "LFU-JT";
        case Algorithm::FifoJt: return "FIFO-JT";
        case Algorithm::Oracle: return "ORACLE";
    }
    throw std::logic_error("unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
    static const std::unordered_map<std::string, Algorithm> table = {
        {"MARL-MABLA", Algorithm::MarlMabla}, {"MARL-ST", Algorithm::MarlSt},
        {"MARL-JT", Algorithm::MarlJt},       {"SARL-JT", Algorithm::SarlJt},
        {"LRU-JT", Algorithm::LruJt},         {"LFU-JT", Algorithm::LfuJt},
        {"FIFO-JT", Algorithm::FifoJt},       {"ORACLE", Algorithm::Oracle},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ConfigError("field 'algorithm': unknown value '" + name + "'");
    return it->second;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key == "num_edges") cfg.sim.num_edges = static_cast<int>(parse_int(key, value));
        else if (key == "num_files") cfg.sim.num_files = static_cast<int>(parse_int(key, value));
        else if (key == "cache_slots") cfg.sim.cache_slots = static_cast<int>(parse_int(key, value));
        else if (key == "file_size_bits") cfg.sim.file_size_bits = parse_double(key, value);
        else if (key == "cell_radius_m") cfg.sim.cell_radius_m = parse_double(key, value);
        else if (key == "user_density_per_km2") cfg.sim.user_density_per_km2 = parse_double(key, value);
        else if (key == "zipf_skew") cfg.sim.zipf_skew = parse_double(key, value);
        else if (key == "path_loss") cfg.sim.path_loss = parse_double(key, value);
        else if (key == "bandwidth_edge_hz") cfg.sim.bandwidth_edge_hz = parse_double(key, value);
        else if (key == "bandwidth_cloud_hz") cfg.sim.bandwidth_cloud_hz = parse_double(key, value);
        else if (key == "cloud_distance_m") cfg.sim.cloud_distance_m = parse_double(key, value);
        else if (key == "peak_power_w") cfg.sim.peak_power_w = parse_double(key, value);
        else if (key == "noise_power_w") cfg.sim.noise_power_w = parse_double(key, value);
        else if (key == "fixed_users") cfg.sim.fixed_users = static_cast<int>(parse_int(key, value));
        else if (key == "rng_seed") cfg.sim.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "algorithm") cfg.algorithm = algorithm_from_name(value);
        else if (key == "iterations") cfg.iterations = static_cast<int>(parse_int(key, value));
        else if (key == "marl_steps") cfg.marl_steps = static_cast<int>(parse_int(key, value));
        else if (key == "mabla_steps") cfg.mabla_steps = static_cast<int>(parse_int(key, value));
        else if (key == "replay_capacity") cfg.replay_capacity = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "learning_rate") cfg.learning_rate = parse_double(key, value);
        else if (key == "target_tau") cfg.target_tau = parse_double(key, value);
        else if (key == "discount") cfg.discount = parse_double(key, value);
        else if (key == "initial_epsilon") cfg.initial_epsilon = parse_double(key, value);
        else if (key == "final_epsilon") cfg.final_epsilon = parse_double(key, value);
        else if (key == "batch_size") cfg.batch_size = static_cast<int>(parse_int(key, value));
        else if (key == "hidden_dim") cfg.hidden_dim = static_cast<int>(parse_int(key, value));
        else if (key == "update_every") cfg.update_every = static_cast<int>(parse_int(key, value));
        else if (key == "optimizer") {
            if (value == "sgd") cfg.optimizer = OptimizerKind::Sgd;
            else if (value == "adagrad") cfg.optimizer = OptimizerKind::Adagrad;
            else throw ConfigError("field 'optimizer': expected sgd or adagrad, got '" + value + "'");
        } else if (key == "beta_reinit_per_iteration") {
            cfg.beta_reinit_per_iteration = parse_bool(key, value);
        } else if (key == "oracle_max_configs") {
            cfg.oracle_max_configs = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "seeds") {
            cfg.seeds.clear();
            std::istringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                if (!tok.empty()) cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(key, tok)));
            }
            if (cfg.seeds.empty()) throw ConfigError("field 'seeds': must not be empty");
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace mecsim
