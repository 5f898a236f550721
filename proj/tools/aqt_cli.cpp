// Command-line runner: every pipeline as a subcommand with seeded,
// machine-readable outputs (CSV tables, JSON summaries, JSONL traces).
//
// Exit codes: 0 success, 1 config/validation error, 2 tolerance breach.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqt/analytic.hpp"
#include "aqt/config.hpp"
#include "aqt/montecarlo.hpp"
#include "aqt/numerics.hpp"
#include "aqt/oracle.hpp"
#include "aqt/recovery.hpp"
#include "aqt/rng.hpp"
#include "aqt/statevector.hpp"

namespace {

using namespace aqt;
using nlohmann::json;

constexpr double kTableTolerance = 1e-9;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::filesystem::path ensure_out_dir(const ExperimentConfig& config) {
    std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

CompositeOracle build_oracle(const ExperimentConfig& config) {
    PeriodicSet periodic(config.n(), config.s, config.period, config.m);
    if (config.p <= 0.0) {
        return CompositeOracle(periodic);
    }
    SplitMix64 rng = substream(*config.seed, 0xe5u);
    return CompositeOracle(periodic, sample_error_stream(periodic, config.p, rng));
}

int cmd_simulate(const ExperimentConfig& config) {
    validate(config, /*stochastic=*/config.p > 0.0);
    const auto dir = ensure_out_dir(config);
    const CompositeOracle oracle = build_oracle(config);
    const int64_t n = config.n();

    double worst = 0.0;
    for (const AlgKind alg : config.algorithms) {
        const ProbTable table = analytic_table(alg, oracle);
        const std::vector<double> sim = simulate_distribution(alg, oracle);
        const auto path = dir / (std::string("simulate_") + to_string(alg) + ".csv");
        std::ofstream out(path);
        std::ofstream probs_out(dir / (std::string("probs_") + to_string(alg) + ".csv"));
        out << "y,case,analytic_prob,simulated_prob,abs_diff\n";
        probs_out << "y,prob\n";
        double alg_worst = 0.0;
        for (int64_t y = 0; y < n; ++y) {
            const auto i = static_cast<std::size_t>(y);
            const double diff = std::abs(table.probs[i] - sim[i]);
            alg_worst = std::max(alg_worst, diff);
            out << y << ',' << to_string(table.cases[i]) << ','
                << fmt(table.probs[i]) << ',' << fmt(sim[i]) << ','
                << fmt(diff) << '\n';
            probs_out << y << ',' << fmt(sim[i]) << '\n';
        }
        std::cout << to_string(alg) << ": max |analytic - simulated| = "
                  << fmt(alg_worst) << " -> " << path.string() << '\n';
        worst = std::max(worst, alg_worst);
    }
    if (worst > kTableTolerance) {
        std::cerr << "table/simulation disagreement above " << fmt(kTableTolerance)
                  << '\n';
        return 2;
    }
    return 0;
}

int cmd_recover(const ExperimentConfig& config) {
    validate(config, /*stochastic=*/true);
    const auto dir = ensure_out_dir(config);
    const CompositeOracle oracle = build_oracle(config);
    const int64_t n = config.n();

    std::ofstream trace_out;
    if (config.trace) {
        trace_out.open(dir / "recover_trace.jsonl");
    }

    for (const AlgKind alg : config.algorithms) {
        const std::vector<double> dist = simulate_distribution(alg, oracle);
        const double queries_per_run =
            alg == AlgKind::AmplifiedQft
                ? static_cast<double>(
                      GroverParams::for_marked(n, oracle.marked_count()).k)
                : 1.0;

        int64_t total_runs = 0;
        int64_t solved = 0;
        json last_solution;
        for (int64_t trial = 0; trial < config.trials; ++trial) {
            SplitMix64 rng = substream(*config.seed,
                                       0x1000u * static_cast<std::uint64_t>(trial) +
                                           static_cast<std::uint64_t>(alg));
            bool done = false;
            for (int attempt = 0; attempt < config.max_retries && !done; ++attempt) {
                ++total_runs;
                // inverse-CDF draw from the pipeline's measurement law
                const double u = uniform_double(rng);
                double acc = 0.0;
                int64_t y = n - 1;
                for (int64_t label = 0; label < n; ++label) {
                    acc += dist[static_cast<std::size_t>(label)];
                    if (u < acc) {
                        y = label;
                        break;
                    }
                }
                std::vector<ConvergentProbe> probes;
                const RecoveryResult rec =
                    recover_period(y, n, config.trace ? &probes : nullptr);
                if (config.trace) {
                    json probe_list = json::array();
                    for (const auto& probe : probes) {
                        probe_list.push_back({{"d", probe.d},
                                              {"q", probe.q},
                                              {"distance_ok", probe.distance_ok}});
                    }
                    trace_out << json{{"algorithm", to_string(alg)},
                                      {"trial", trial},
                                      {"attempt", attempt},
                                      {"y", y},
                                      {"convergents", probe_list},
                                      {"outcome", to_string(rec.status)}}
                                     .dump()
                              << '\n';
                }
                if (rec.status != RecoveryStatus::Recovered) {
                    continue;
                }
                const OffsetSearch offset =
                    find_offset_decreasing(oracle, rec.period, config.m, rng);
                if (offset.ok) {
                    done = true;
                    ++solved;
                    last_solution = {{"d", rec.d},
                                     {"P", rec.period},
                                     {"s", offset.offset},
                                     {"offset_rounds", offset.rounds}};
                }
                // verification failure: wrong or divisor period, rerun
            }
        }
        const double mean_trials =
            static_cast<double>(total_runs) / static_cast<double>(config.trials);
        json report = {
            {"algorithm", to_string(alg)},
            {"runs", config.trials},
            {"solved", solved},
            {"failed", config.trials - solved},
            {"mean_trials", mean_trials},
            {"mean_oracle_queries", mean_trials * queries_per_run},
            {"solution", last_solution},
        };
        // runs that exhaust max_retries censor the raw mean; attempts-per-
        // success is the geometric-distribution estimate under censoring
        if (solved > 0) {
            report["estimated_trials_per_success"] =
                static_cast<double>(total_runs) / static_cast<double>(solved);
        }
        if (alg != AlgKind::AmplifiedQft) {
            const double bound =
                expected_trials(alg, n, oracle.marked_count()).expected_lower;
            report["expected_trials_lower_bound"] = bound;
            if (solved > 0) {
                report["bound_satisfied"] =
                    static_cast<double>(total_runs) / static_cast<double>(solved) >=
                    bound;
            }
        } else {
            report["work_factor"] =
                expected_trials(alg, n, oracle.marked_count()).expected_lower;
        }
        const auto path = dir / (std::string("recover_") + to_string(alg) + ".json");
        std::ofstream(path) << report.dump(2) << '\n';
        std::cout << to_string(alg) << ": solved " << solved << "/" << config.trials
                  << ", mean trials " << fmt(mean_trials) << " -> " << path.string()
                  << '\n';
    }
    return 0;
}

int cmd_error_stream(const ExperimentConfig& config) {
    validate(config, /*stochastic=*/true);
    const auto dir = ensure_out_dir(config);
    const ErrorStreamRecord record =
        run_error_stream_experiment(config.n(), config.m, config.period,
                                    config.s, config.p, config.trials,
                                    *config.seed);

    std::ofstream jsonl(dir / "error_stream_trials.jsonl");
    for (const auto& trial : record.trials) {
        json j = {{"trial", trial.index},
                  {"L", trial.l},
                  {"G", trial.error_labels},
                  {"ratio_in_bounds", trial.ratio_in_bounds},
                  {"mean_ratio_qft", trial.mean_ratio_qft},
                  {"mean_ratio_qhs", trial.mean_ratio_qhs}};
        const char* names[3] = {"amplified-qft", "qft", "qhs"};
        for (int a = 0; a < 3; ++a) {
            j[names[a]] = {{"max_abs_diff", trial.outcome[a].max_abs_diff},
                           {"measured_y", trial.outcome[a].measured_y},
                           {"recovery", to_string(trial.outcome[a].recovery)},
                           {"analytic_success", trial.outcome[a].analytic_success}};
        }
        jsonl << j.dump() << '\n';
    }

    std::ofstream csv(dir / "error_stream_summary.csv");
    csv << "n,m,period,s,p,algorithm,empirical_success,analytic_success,"
           "ratio_lower,ratio_upper\n";
    const AlgKind algs[3] = {AlgKind::AmplifiedQft, AlgKind::Qft, AlgKind::Qhs};
    for (int a = 0; a < 3; ++a) {
        double analytic_success = 0.0;
        for (const auto& trial : record.trials) {
            analytic_success += trial.outcome[a].analytic_success;
        }
        analytic_success /= static_cast<double>(record.trials.size());
        RatioBounds bounds{0.0, 0.0};
        if (algs[a] != AlgKind::AmplifiedQft) {
            const int64_t t_typical =
                record.m + (record.trials.empty() ? 0 : record.trials.front().l);
            if (t_typical >= 1 && 2 * t_typical < record.n) {
                bounds = pr_ratio_bounds(algs[a], record.n, t_typical);
            }
        }
        csv << record.n << ',' << record.m << ',' << record.period << ','
            << record.s << ',' << fmt(record.rate) << ',' << to_string(algs[a])
            << ',' << fmt(record.empirical_success[a]) << ','
            << fmt(analytic_success) << ',' << fmt(bounds.lower) << ','
            << fmt(bounds.upper) << '\n';
    }

    std::cout << "max table/simulation diff " << fmt(record.max_abs_diff)
              << ", ratios in bounds: "
              << (record.all_ratios_in_bounds ? "yes" : "no") << '\n';
    if (record.max_abs_diff > kTableTolerance || !record.all_ratios_in_bounds) {
        return 2;
    }
    return 0;
}

int cmd_minl_sweep(const ExperimentConfig& config, int64_t l_max,
                   int64_t l_step) {
    validate(config, /*stochastic=*/true);
    if (config.m < 2) {
        throw ConfigError("minl-sweep needs M >= 2");
    }
    const auto dir = ensure_out_dir(config);
    const int64_t n = config.n();
    if (l_max <= 0) {
        l_max = std::min<int64_t>(
            n - config.m - 1,
            static_cast<int64_t>(3.0 * min_l(n, config.m)));
    }
    if (l_step <= 0) {
        l_step = std::max<int64_t>(1, l_max / 64);
    }
    std::vector<int64_t> l_values;
    for (int64_t l = 0; l <= l_max; l += l_step) {
        l_values.push_back(l);
    }
    const MinLSweepResult sweep = min_l_sweep(n, config.m, config.s, l_values,
                                              config.trials, *config.seed);

    std::ofstream csv(dir / "minl_sweep.csv");
    csv << "l,sampled_mean,exact_mean,sampled_bound,bound_curve\n";
    for (const auto& point : sweep.points) {
        csv << point.l << ',' << fmt(point.sampled_mean) << ','
            << fmt(point.exact_mean) << ',' << fmt(point.sampled_bound) << ','
            << fmt(point.bound_curve) << '\n';
    }
    json summary = {{"closed_form", sweep.closed_form},
                    {"grid_minimizer", sweep.grid_minimizer},
                    {"empirical_minimizer", sweep.empirical_minimizer}};
    std::ofstream(dir / "minl_summary.json") << summary.dump(2) << '\n';
    std::cout << "MinL closed form " << fmt(sweep.closed_form)
              << ", grid " << fmt(sweep.grid_minimizer) << ", empirical "
              << sweep.empirical_minimizer << '\n';
    return 0;
}

int cmd_moments(const ExperimentConfig& config, int64_t l) {
    validate(config, /*stochastic=*/true);
    const auto dir = ensure_out_dir(config);
    const int64_t n = config.n();
    const int64_t t = config.m + l;
    SplitMix64 rng = substream(*config.seed, 0x700u);

    json report = json::array();
    bool ok = true;
    const auto check = [&](const char* name, const MomentEstimate& est,
                           double mean_expect, double var_expect) {
        const bool mean_ok =
            std::abs(est.mean - mean_expect) <= 5.0 * est.std_error_mean + 1e-12;
        // fourth-moment formulas rest on an integral approximation; allow a
        // relative band on top of sampling error
        const bool var_ok =
            std::abs(est.variance - var_expect) <=
            0.05 * var_expect + 5.0 * est.std_error_var + 1e-12;
        ok = ok && mean_ok && var_ok;
        report.push_back({{"form", name},
                          {"mean", est.mean},
                          {"mean_expected", mean_expect},
                          {"mean_ok", mean_ok},
                          {"variance", est.variance},
                          {"variance_expected", var_expect},
                          {"variance_ok", var_ok},
                          {"std_error_mean", est.std_error_mean},
                          {"trials", est.trials}});
    };

    const double ld = static_cast<double>(l);
    const double td = static_cast<double>(t);
    const double md = static_cast<double>(config.m);

    check("plain",
          estimate_random_sum_moments(n, l, config.trials, SumForm::Plain, {}, rng),
          ld, ld * ld - ld);
    SumFormParams offset_params{md / td, 1.0 / td, 0.0};
    check("with_offset",
          estimate_random_sum_moments(n, l, config.trials, SumForm::WithOffset,
                                      offset_params, rng),
          (md * md + ld) / (td * td),
          (ld * ld - ld + 2.0 * md * md * ld) / (td * td * td * td));

    std::ofstream(dir / "moments.json") << report.dump(2) << '\n';
    std::cout << "moment checks " << (ok ? "passed" : "FAILED") << '\n';
    return ok ? 0 : 2;
}

int cmd_haar(const ExperimentConfig& config) {
    validate(config, /*stochastic=*/true);
    const auto dir = ensure_out_dir(config);
    const int64_t n = config.n();
    if (2 * config.m >= n / 2) {
        throw ConfigError("haar needs 2M < N/2");
    }

    // M distinct even pair starts, drawn from the seed
    SplitMix64 setup = substream(*config.seed, 0x9a1u);
    std::vector<int64_t> evens(static_cast<std::size_t>(n / 2));
    for (int64_t i = 0; i < n / 2; ++i) {
        evens[static_cast<std::size_t>(i)] = 2 * i;
    }
    for (int64_t i = 0; i < config.m; ++i) {
        const auto j = i + static_cast<int64_t>(uniform_below(
                               setup, static_cast<std::uint64_t>(n / 2 - i)));
        std::swap(evens[static_cast<std::size_t>(i)],
                  evens[static_cast<std::size_t>(j)]);
    }
    evens.resize(static_cast<std::size_t>(config.m));
    const PairFamily pairs(n, evens);

    int64_t correct_constant = 0;
    int64_t correct_balanced = 0;
    for (int64_t trial = 0; trial < config.trials; ++trial) {
        SplitMix64 rng = substream(*config.seed, 2 * static_cast<std::uint64_t>(trial) + 1);
        std::vector<std::uint8_t> signal(static_cast<std::size_t>(n));
        for (auto& bit : signal) {
            bit = static_cast<std::uint8_t>(uniform_below(rng, 2));
        }
        for (const int64_t e : evens) {  // constant on each pair
            signal[static_cast<std::size_t>(e) + 1] = signal[static_cast<std::size_t>(e)];
        }
        if (haar_decide(pairs, signal, rng) == HaarDecision::Constant) {
            ++correct_constant;
        }
        for (const int64_t e : evens) {  // balanced on each pair
            signal[static_cast<std::size_t>(e) + 1] =
                static_cast<std::uint8_t>(1 - signal[static_cast<std::size_t>(e)]);
        }
        if (haar_decide(pairs, signal, rng) == HaarDecision::Balanced) {
            ++correct_balanced;
        }
    }
    const double trials_d = static_cast<double>(config.trials);
    const double rate_constant = static_cast<double>(correct_constant) / trials_d;
    const double rate_balanced = static_cast<double>(correct_balanced) / trials_d;
    const double bound = 1.0 - 2.0 * static_cast<double>(config.m) /
                                   static_cast<double>(n);
    const double slack = 4.0 * std::sqrt(bound * (1.0 - bound) / trials_d);
    const bool ok = rate_constant >= bound - slack && rate_balanced >= bound - slack;

    json report = {{"pairs", evens},
                   {"trials", config.trials},
                   {"rate_constant", rate_constant},
                   {"rate_balanced", rate_balanced},
                   {"bound", bound},
                   {"slack_4sigma", slack},
                   {"classical_sample_size", classical_sample_size(n, config.m).n},
                   {"amplified_wins", classical_sample_size(n, config.m).amplified_wins}};
    std::ofstream(dir / "haar.json") << report.dump(2) << '\n';
    std::cout << "haar decision rates: constant " << fmt(rate_constant)
              << ", balanced " << fmt(rate_balanced) << " (bound "
              << fmt(bound - slack) << ")\n";
    return ok ? 0 : 2;
}

int cmd_uncertainty(const ExperimentConfig& config) {
    if (config.p != 0.0) {
        throw ConfigError("uncertainty runs on the noise-free oracle; set p = 0");
    }
    validate(config, /*stochastic=*/false);
    const auto dir = ensure_out_dir(config);
    const CompositeOracle oracle = build_oracle(config);

    const StateVector state = grover_no_measure(oracle);
    const UncertaintySupport support = uncertainty_support(state, config.m);
    const int64_t modular = expected_support(oracle);
    const bool ok = support.holds && support.n_y == modular;

    json report = {{"n", config.n()},
                   {"m", config.m},
                   {"n_y", support.n_y},
                   {"modular_count", modular},
                   {"product", config.m * support.n_y},
                   {"holds", support.holds}};
    std::ofstream(dir / "uncertainty.json") << report.dump(2) << '\n';
    std::cout << "N_y = " << support.n_y << " (modular " << modular << "), M*N_y = "
              << config.m * support.n_y << " >= N = " << config.n() << ": "
              << (support.holds ? "yes" : "NO") << '\n';
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"amplified quantum transform simulation toolkit"};
    app.require_subcommand(1);

    ExperimentConfig config;
    std::string config_path;
    std::uint64_t seed_flag = 0;
    int64_t moments_l = 6;
    int64_t l_max = 0, l_step = 0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed_flag, "master seed (required for stochastic runs)");
        cmd->add_option("--n", config.n_exp, "label-count exponent, N = 2^n");
        cmd->add_option("--s", config.s, "periodic-set offset");
        cmd->add_option("--period", config.period, "periodic-set period P");
        cmd->add_option("--m", config.m, "periodic-set size M");
        cmd->add_option("--p", config.p, "error-stream Bernoulli rate");
        cmd->add_option("--trials", config.trials, "trial count");
        cmd->add_option("--out", config.output_dir, "output directory");
        cmd->add_flag("--trace", config.trace, "emit JSONL traces");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "closed-form tables vs statevector simulation");
    CLI::App* recover = app.add_subcommand("recover", "repeat-until-success period and offset recovery");
    CLI::App* error_stream = app.add_subcommand("error-stream", "noisy-oracle experiments");
    CLI::App* minl = app.add_subcommand("minl-sweep", "error-set size sweep of the success bound");
    CLI::App* moments = app.add_subcommand("moments", "random phase-sum moment validation");
    CLI::App* haar = app.add_subcommand("haar", "pairwise constant-or-balanced decision");
    CLI::App* uncertainty = app.add_subcommand("uncertainty", "Fourier support product check");
    for (CLI::App* cmd : {simulate, recover, error_stream, minl, moments, haar, uncertainty}) {
        add_common(cmd);
    }
    moments->add_option("--l", moments_l, "error-set size L");
    minl->add_option("--l-max", l_max, "largest L in the sweep");
    minl->add_option("--l-step", l_step, "L grid step");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // flags win: re-apply the parsed command line over the file
            ExperimentConfig from_file;
            apply_config_file(from_file, config_path);
            const ExperimentConfig flag_values = config;
            config = from_file;
            for (const CLI::App* cmd :
                 {simulate, recover, error_stream, minl, moments, haar, uncertainty}) {
                if (!cmd->parsed()) {
                    continue;
                }
                if (cmd->count("--n") != 0u) config.n_exp = flag_values.n_exp;
                if (cmd->count("--s") != 0u) config.s = flag_values.s;
                if (cmd->count("--period") != 0u) config.period = flag_values.period;
                if (cmd->count("--m") != 0u) config.m = flag_values.m;
                if (cmd->count("--p") != 0u) config.p = flag_values.p;
                if (cmd->count("--trials") != 0u) config.trials = flag_values.trials;
                if (cmd->count("--out") != 0u) config.output_dir = flag_values.output_dir;
                if (cmd->count("--trace") != 0u) config.trace = flag_values.trace;
                if (cmd->count("--seed") != 0u) config.seed = seed_flag;
            }
        } else {
            for (const CLI::App* cmd :
                 {simulate, recover, error_stream, minl, moments, haar, uncertainty}) {
                if (cmd->parsed() && cmd->count("--seed") != 0u) {
                    config.seed = seed_flag;
                }
            }
        }

        if (simulate->parsed()) return cmd_simulate(config);
        if (recover->parsed()) return cmd_recover(config);
        if (error_stream->parsed()) return cmd_error_stream(config);
        if (minl->parsed()) return cmd_minl_sweep(config, l_max, l_step);
        if (moments->parsed()) return cmd_moments(config, moments_l);
        if (haar->parsed()) return cmd_haar(config);
        if (uncertainty->parsed()) return cmd_uncertainty(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
