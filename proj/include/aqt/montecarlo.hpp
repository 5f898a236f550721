#pragma once

#include <cstdint>
#include <vector>

#include "aqt/analytic.hpp"
#include "aqt/oracle.hpp"
#include "aqt/recovery.hpp"

namespace aqt {

struct MomentEstimate {
    double mean = 0.0;
    double variance = 0.0;       // unbiased sample variance
    int64_t trials = 0;
    double std_error_mean = 0.0;
    double std_error_var = 0.0;  // asymptotic SE of the sample variance
};

enum class SumForm {
    Plain,        // |sum_j w^{z_j y}|^2
    WithOffset,   // |a w^{sy} + b sum_j w^{z_j y}|^2
    WithComplex,  // |a + i c + b sum_j w^{z_j y}|^2
};

struct SumFormParams {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
};

// Samples the random-set modulus terms under the i.i.d.-uniform model the
// moment formulas are stated for: each trial draws L labels uniformly with
// replacement, plus y uniform in [1, N) and (for WithOffset) a uniform
// offset phase.  Variance claims need at least 100 trials.
MomentEstimate estimate_random_sum_moments(int64_t n, int64_t l,
                                           int64_t trials, SumForm form,
                                           SumFormParams params,
                                           SplitMix64& rng);

// Per-algorithm outcome of one error-stream trial.
struct AlgOutcome {
    double max_abs_diff = 0.0;   // analytic table vs simulated distribution
    int64_t measured_y = 0;
    RecoveryStatus recovery = RecoveryStatus::Failed;
    double analytic_success = 0.0;  // probability of the success set
};

struct ErrorStreamTrial {
    int64_t index = 0;
    int64_t l = 0;
    std::vector<int64_t> error_labels;
    AlgOutcome outcome[3];        // indexed by AlgKind order
    bool ratio_in_bounds = true;  // amplified/QFT and amplified/QHS, case B/C
    double mean_ratio_qft = 0.0;
    double mean_ratio_qhs = 0.0;
};

struct ErrorStreamRecord {
    int64_t n = 0, m = 0, period = 0, s = 0;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::vector<ErrorStreamTrial> trials;
    double empirical_success[3] = {0.0, 0.0, 0.0};
    double max_abs_diff = 0.0;
    bool all_ratios_in_bounds = true;
};

// Per trial: sample G disjoint from A, evaluate all three closed-form
// tables against explicit simulation, check the per-label ratio sandwich,
// and attempt one measurement + continued-fraction recovery per algorithm.
// Trial streams split from the master seed by index.
ErrorStreamRecord run_error_stream_experiment(int64_t n, int64_t m,
                                              int64_t period, int64_t s,
                                              double rate, int64_t trials,
                                              std::uint64_t seed);

struct MinLPoint {
    int64_t l = 0;
    double sampled_mean = 0.0;   // estimated case-B modulus-term mean
    double exact_mean = 0.0;     // (M^2+L)/(L+M)^2
    double sampled_bound = 0.0;  // sampled_mean * T/(N-T)
    double bound_curve = 0.0;    // f(L), the deterministic envelope
};

struct MinLSweepResult {
    std::vector<MinLPoint> points;
    double closed_form = 0.0;          // min_l(N, M)
    double grid_minimizer = 0.0;       // fine-grid argmin of f
    int64_t empirical_minimizer = 0;   // argmin of sampled_bound over points
};

// Sweeps error-set sizes L under the i.i.d.-uniform model the moment
// formulas average over.  Each trial draws one nested sequence of labels
// shared by every grid point (common random numbers), and the case-B
// modulus term is averaged over all y != 0 in closed per-draw form, which
// leaves only the collision randomness.  The sampled envelope
// sampled_mean * T/(N-T) recovers the f(L) bowl whose minimizer the closed
// form predicts.
MinLSweepResult min_l_sweep(int64_t n, int64_t m, int64_t s,
                            const std::vector<int64_t>& l_values,
                            int64_t trials_per_l, std::uint64_t seed);

}  // namespace aqt
