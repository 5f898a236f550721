#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqt/analytic.hpp"

namespace aqt {

// Run parameters shared by every subcommand.  JSON config first, CLI flags
// override.
struct ExperimentConfig {
    int n_exp = 10;  // N = 2^n_exp
    int64_t s = 208;
    int64_t period = 5;
    int64_t m = 7;
    double p = 0.0;  // error-stream rate
    int64_t trials = 100;
    std::optional<std::uint64_t> seed;
    std::vector<AlgKind> algorithms = {AlgKind::AmplifiedQft, AlgKind::Qft,
                                       AlgKind::Qhs};
    std::string output_dir = ".";
    bool trace = false;
    int max_retries = 16;

    int64_t n() const { return int64_t{1} << n_exp; }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses the JSON fields n_exp, s, P, M, p, seed, trials, algorithms,
// output_dir, max_retries onto `config`; unknown fields are rejected.
void apply_config_file(ExperimentConfig& config, const std::string& path);

// Throws ConfigError with a precise message on the first violated
// constraint; `stochastic` additionally demands an explicit seed.
void validate(const ExperimentConfig& config, bool stochastic);

AlgKind parse_alg(const std::string& name);

}  // namespace aqt
