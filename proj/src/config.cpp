#include "aqt/config.hpp"

#include <fstream>

#include <json.hpp>

namespace aqt {

AlgKind parse_alg(const std::string& name) {
    if (name == "amplified-qft" || name == "amplified_qft" || name == "aqft") {
        return AlgKind::AmplifiedQft;
    }
    if (name == "qft") {
        return AlgKind::Qft;
    }
    if (name == "qhs") {
        return AlgKind::Qhs;
    }
    throw ConfigError("unknown algorithm '" + name +
                      "' (expected amplified-qft, qft or qhs)");
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "n_exp") {
            config.n_exp = value.get<int>();
        } else if (key == "s") {
            config.s = value.get<int64_t>();
        } else if (key == "P") {
            config.period = value.get<int64_t>();
        } else if (key == "M") {
            config.m = value.get<int64_t>();
        } else if (key == "p") {
            config.p = value.get<double>();
        } else if (key == "seed") {
            config.seed = value.get<std::uint64_t>();
        } else if (key == "trials") {
            config.trials = value.get<int64_t>();
        } else if (key == "output_dir") {
            config.output_dir = value.get<std::string>();
        } else if (key == "max_retries") {
            config.max_retries = value.get<int>();
        } else if (key == "algorithms") {
            config.algorithms.clear();
            for (const auto& name : value) {
                config.algorithms.push_back(parse_alg(name.get<std::string>()));
            }
        } else {
            throw ConfigError("unknown config field: " + key);
        }
    }
}

void validate(const ExperimentConfig& config, bool stochastic) {
    if (config.n_exp < 2 || config.n_exp > 24) {
        throw ConfigError("n_exp must be in [2, 24]");
    }
    const int64_t n = config.n();
    if (config.period < 1) {
        throw ConfigError("P must be positive");
    }
    if (config.period * config.period > n) {
        throw ConfigError("P exceeds sqrt(N): P=" + std::to_string(config.period) +
                          ", N=" + std::to_string(n));
    }
    if (config.m < 1) {
        throw ConfigError("M must be positive");
    }
    if (config.s < 0 || config.s >= n) {
        throw ConfigError("s out of range [0, N)");
    }
    if (config.s + (config.m - 1) * config.period > n - 1) {
        throw ConfigError("periodic set overflows the label range: s + (M-1)P = " +
                          std::to_string(config.s + (config.m - 1) * config.period) +
                          " > " + std::to_string(n - 1));
    }
    if (config.p < 0.0 || config.p > 1.0) {
        throw ConfigError("error rate p must lie in [0, 1]");
    }
    if (config.trials < 1) {
        throw ConfigError("trials must be positive");
    }
    if (config.max_retries < 1) {
        throw ConfigError("max_retries must be positive");
    }
    if (config.algorithms.empty()) {
        throw ConfigError("at least one algorithm must be selected");
    }
    if (stochastic && !config.seed.has_value()) {
        throw ConfigError("this subcommand is stochastic; --seed is required");
    }
}

}  // namespace aqt
