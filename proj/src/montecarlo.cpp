#include "aqt/montecarlo.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "aqt/numerics.hpp"
#include "aqt/statevector.hpp"

namespace aqt {

namespace {

MomentEstimate summarize(const std::vector<double>& values) {
    MomentEstimate est;
    est.trials = static_cast<int64_t>(values.size());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    est.mean = sum / n;
    double m2 = 0.0, m4 = 0.0;
    for (const double v : values) {
        const double d = v - est.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    est.variance = values.size() > 1 ? m2 / (n - 1.0) : 0.0;
    est.std_error_mean = std::sqrt(est.variance / n);
    const double central4 = m4 / n;
    const double var_of_var =
        std::max(0.0, central4 - est.variance * est.variance);
    est.std_error_var = std::sqrt(var_of_var / n);
    return est;
}

}  // namespace

MomentEstimate estimate_random_sum_moments(int64_t n, int64_t l,
                                           int64_t trials, SumForm form,
                                           SumFormParams params,
                                           SplitMix64& rng) {
    if (l < 0 || n < 2) {
        throw std::invalid_argument("estimate_random_sum_moments: bad n or l");
    }
    if (trials < 100) {
        throw std::invalid_argument(
            "estimate_random_sum_moments: variance estimates need >= 100 trials");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(trials));
    for (int64_t trial = 0; trial < trials; ++trial) {
        const int64_t y =
            1 + static_cast<int64_t>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
        std::complex<double> acc{0.0, 0.0};
        for (int64_t j = 0; j < l; ++j) {
            const auto z = static_cast<int64_t>(
                uniform_below(rng, static_cast<std::uint64_t>(n)));
            acc += root_power(n, z * y);
        }
        std::complex<double> value{0.0, 0.0};
        switch (form) {
            case SumForm::Plain:
                value = acc;
                break;
            case SumForm::WithOffset: {
                const auto s = static_cast<int64_t>(
                    uniform_below(rng, static_cast<std::uint64_t>(n)));
                value = params.a * root_power(n, s * y) + params.b * acc;
                break;
            }
            case SumForm::WithComplex:
                value = std::complex<double>{params.a, params.c} + params.b * acc;
                break;
        }
        values.push_back(std::norm(value));
    }
    return summarize(values);
}

namespace {

constexpr AlgKind kAlgs[3] = {AlgKind::AmplifiedQft, AlgKind::Qft,
                              AlgKind::Qhs};

}  // namespace

ErrorStreamRecord run_error_stream_experiment(int64_t n, int64_t m,
                                              int64_t period, int64_t s,
                                              double rate, int64_t trials,
                                              std::uint64_t seed) {
    ErrorStreamRecord record;
    record.n = n;
    record.m = m;
    record.period = period;
    record.s = s;
    record.rate = rate;
    record.seed = seed;
    record.trials.reserve(static_cast<std::size_t>(trials));

    const PeriodicSet periodic(n, s, period, m);
    int64_t successes[3] = {0, 0, 0};

    for (int64_t index = 0; index < trials; ++index) {
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(index));
        ErrorStream errors = sample_error_stream(periodic, rate, rng);
        ErrorStreamTrial trial;
        trial.index = index;
        trial.l = errors.size();
        trial.error_labels = errors.labels;
        const CompositeOracle oracle(periodic, std::move(errors));

        ProbTable tables[3] = {
            analytic_table(AlgKind::AmplifiedQft, oracle),
            analytic_table(AlgKind::Qft, oracle),
            analytic_table(AlgKind::Qhs, oracle),
        };
        for (int a = 0; a < 3; ++a) {
            const std::vector<double> sim = simulate_distribution(kAlgs[a], oracle);
            double worst = 0.0;
            for (int64_t y = 0; y < n; ++y) {
                worst = std::max(worst,
                                 std::abs(sim[static_cast<std::size_t>(y)] -
                                          tables[a].probs[static_cast<std::size_t>(y)]));
            }
            trial.outcome[a].max_abs_diff = worst;
            trial.outcome[a].analytic_success =
                success_probability(kAlgs[a], oracle);

            SplitMix64 draw_rng = substream(seed ^ 0x5bd1e995u,
                                            static_cast<std::uint64_t>(index * 3 + a));
            // inverse-CDF draw from the simulated distribution
            const double u = uniform_double(draw_rng);
            double acc_p = 0.0;
            int64_t measured = n - 1;
            for (int64_t y = 0; y < n; ++y) {
                acc_p += sim[static_cast<std::size_t>(y)];
                if (u < acc_p) {
                    measured = y;
                    break;
                }
            }
            trial.outcome[a].measured_y = measured;
            trial.outcome[a].recovery =
                classify_recovery(recover_period(measured, n), period);
            if (trial.outcome[a].recovery == RecoveryStatus::Recovered) {
                ++successes[a];
            }
        }

        // per-label ratio sandwich over case-B/C labels
        const int64_t t = oracle.marked_count();
        if (t >= 1 && 2 * t < n) {
            const RatioBounds qft_bounds = pr_ratio_bounds(AlgKind::Qft, n, t);
            const RatioBounds qhs_bounds = pr_ratio_bounds(AlgKind::Qhs, n, t);
            double sum_qft = 0.0, sum_qhs = 0.0;
            int64_t count = 0;
            for (int64_t y = 0; y < n; ++y) {
                const CaseTag tag = tables[0].cases[static_cast<std::size_t>(y)];
                if (tag != CaseTag::B && tag != CaseTag::C) {
                    continue;
                }
                const double amp = tables[0].probs[static_cast<std::size_t>(y)];
                const double qft = tables[1].probs[static_cast<std::size_t>(y)];
                const double qhs = tables[2].probs[static_cast<std::size_t>(y)];
                if (qft <= 0.0 || qhs <= 0.0) {
                    continue;  // error phases can cancel a case-B/C label exactly
                }
                const double r_qft = amp / qft;
                const double r_qhs = amp / qhs;
                sum_qft += r_qft;
                sum_qhs += r_qhs;
                ++count;
                const double slack = 1e-9;
                if (r_qft < qft_bounds.lower - slack ||
                    r_qft > qft_bounds.upper + slack ||
                    r_qhs < qhs_bounds.lower - slack ||
                    r_qhs > qhs_bounds.upper + slack) {
                    trial.ratio_in_bounds = false;
                }
            }
            if (count > 0) {
                trial.mean_ratio_qft = sum_qft / static_cast<double>(count);
                trial.mean_ratio_qhs = sum_qhs / static_cast<double>(count);
            }
        }

        record.max_abs_diff =
            std::max({record.max_abs_diff, trial.outcome[0].max_abs_diff,
                      trial.outcome[1].max_abs_diff, trial.outcome[2].max_abs_diff});
        record.all_ratios_in_bounds =
            record.all_ratios_in_bounds && trial.ratio_in_bounds;
        record.trials.push_back(std::move(trial));
    }
    for (int a = 0; a < 3; ++a) {
        record.empirical_success[a] =
            static_cast<double>(successes[a]) / static_cast<double>(trials);
    }
    return record;
}

MinLSweepResult min_l_sweep(int64_t n, int64_t m, int64_t s,
                            const std::vector<int64_t>& l_values,
                            int64_t trials_per_l, std::uint64_t seed) {
    if (l_values.empty() || trials_per_l < 1) {
        throw std::invalid_argument("min_l_sweep: empty grid or no trials");
    }
    std::vector<int64_t> grid = l_values;
    std::sort(grid.begin(), grid.end());
    const int64_t l_max = grid.back();
    if (grid.front() < 0 || l_max > n - m - 1) {
        throw std::invalid_argument("min_l_sweep: L outside [0, N-M-1]");
    }
    if (s < 0 || s >= n) {
        throw std::invalid_argument("min_l_sweep: offset out of range");
    }

    MinLSweepResult result;
    result.closed_form = min_l(n, m);
    result.grid_minimizer = min_l_grid_minimizer(n, m);

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);

    // For one drawn tuple, |M/T w^{sy} + (1/T) sum_j w^{z_j y}|^2 averaged
    // over every y (Parseval) is (sum_x weight_x^2)/T^2 with weight_x the
    // draw count at x, plus M folded onto label s; y = 0 always contributes
    // exactly 1.  Averaging over y != 0 is therefore closed-form per tuple,
    // and the tuple prefixes give every grid point a common sample path.
    std::vector<double> sums(grid.size(), 0.0);
    std::vector<int64_t> counts(static_cast<std::size_t>(n));
    for (int64_t trial = 0; trial < trials_per_l; ++trial) {
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(trial));
        std::fill(counts.begin(), counts.end(), int64_t{0});
        double weight_sq = md * md;  // counts empty, label s carries M
        int64_t drawn = 0;
        for (std::size_t point = 0; point < grid.size(); ++point) {
            for (; drawn < grid[point]; ++drawn) {
                const auto z = static_cast<int64_t>(
                    uniform_below(rng, static_cast<std::uint64_t>(n)));
                const double base =
                    static_cast<double>(counts[static_cast<std::size_t>(z)]) +
                    (z == s ? md : 0.0);
                weight_sq += 2.0 * base + 1.0;
                ++counts[static_cast<std::size_t>(z)];
            }
            const double td = md + static_cast<double>(grid[point]);
            sums[point] += (nd * weight_sq / (td * td) - 1.0) / (nd - 1.0);
        }
    }

    for (std::size_t point = 0; point < grid.size(); ++point) {
        const int64_t l = grid[point];
        const double td = md + static_cast<double>(l);
        MinLPoint out;
        out.l = l;
        out.exact_mean = (md * md + static_cast<double>(l)) / (td * td);
        out.bound_curve = min_l_bound(n, m, static_cast<double>(l));
        out.sampled_mean = sums[point] / static_cast<double>(trials_per_l);
        out.sampled_bound = out.sampled_mean * td / (nd - td);
        result.points.push_back(out);
    }

    double best = result.points.front().sampled_bound;
    result.empirical_minimizer = result.points.front().l;
    for (const MinLPoint& point : result.points) {
        if (point.sampled_bound < best) {
            best = point.sampled_bound;
            result.empirical_minimizer = point.l;
        }
    }
    return result;
}

}  // namespace aqt
