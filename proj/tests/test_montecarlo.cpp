#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aqt/montecarlo.hpp"

using namespace aqt;

TEST_CASE("random phase-sum moments", "[montecarlo]") {
    SECTION("single draw has unit modulus exactly") {
        SplitMix64 rng(3);
        const MomentEstimate est =
            estimate_random_sum_moments(1024, 1, 1000, SumForm::Plain, {}, rng);
        REQUIRE(est.mean == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(est.variance == Catch::Approx(0.0).margin(1e-12));
    }

    SECTION("plain mean approaches L") {
        SplitMix64 rng(5);
        const MomentEstimate est =
            estimate_random_sum_moments(1024, 6, 20000, SumForm::Plain, {}, rng);
        REQUIRE(std::abs(est.mean - 6.0) <= 5.0 * est.std_error_mean);
        REQUIRE(std::abs(est.variance - 30.0) <=
                0.05 * 30.0 + 5.0 * est.std_error_var);
    }

    SECTION("offset form reproduces the case-B mean") {
        SplitMix64 rng(7);
        const SumFormParams params{7.0 / 13.0, 1.0 / 13.0, 0.0};
        const MomentEstimate est = estimate_random_sum_moments(
            1024, 6, 20000, SumForm::WithOffset, params, rng);
        REQUIRE(std::abs(est.mean - 55.0 / 169.0) <= 5.0 * est.std_error_mean);
        const double var_expect = (36.0 - 6.0 + 2.0 * 49.0 * 6.0) / std::pow(13.0, 4);
        REQUIRE(std::abs(est.variance - var_expect) <=
                0.05 * var_expect + 5.0 * est.std_error_var);
    }

    SECTION("complex-offset form adds the two fixed squares") {
        SplitMix64 rng(9);
        const SumFormParams params{0.3, 0.2, -0.4};
        const MomentEstimate est = estimate_random_sum_moments(
            1024, 5, 20000, SumForm::WithComplex, params, rng);
        const double expect = 0.3 * 0.3 + 0.4 * 0.4 + 0.2 * 0.2 * 5.0;
        REQUIRE(std::abs(est.mean - expect) <= 5.0 * est.std_error_mean);
    }

    SECTION("variance claims need enough trials") {
        SplitMix64 rng(1);
        REQUIRE_THROWS_AS(
            estimate_random_sum_moments(1024, 3, 99, SumForm::Plain, {}, rng),
            std::invalid_argument);
    }

    SECTION("errors shrink at the 1/sqrt(trials) rate up the ladder") {
        double prev_se = 0.0;
        for (const int64_t trials : {int64_t{1000}, int64_t{4000}, int64_t{16000}}) {
            SplitMix64 rng(0x1adde5);
            const MomentEstimate est =
                estimate_random_sum_moments(1024, 6, trials, SumForm::Plain, {}, rng);
            REQUIRE(std::abs(est.mean - 6.0) <= 5.0 * est.std_error_mean);
            if (prev_se > 0.0) {
                // quadrupling the trials halves the standard error
                REQUIRE(prev_se / est.std_error_mean ==
                        Catch::Approx(2.0).epsilon(0.2));
            }
            prev_se = est.std_error_mean;
        }
    }
}

TEST_CASE("error-stream experiments", "[montecarlo]") {
    SECTION("rate zero reproduces the noise-free tables") {
        const ErrorStreamRecord record =
            run_error_stream_experiment(256, 5, 7, 9, 0.0, 5, 99);
        REQUIRE(record.max_abs_diff < 1e-9);
        for (const auto& trial : record.trials) {
            REQUIRE(trial.l == 0);
        }
        // identical to the explicitly noise-free oracle
        const CompositeOracle plain{PeriodicSet(256, 9, 7, 5)};
        const ProbTable direct = analytic_table(AlgKind::AmplifiedQft, plain);
        const CompositeOracle empty_errors{PeriodicSet(256, 9, 7, 5), ErrorStream{}};
        const ProbTable via_stream = analytic_table(AlgKind::AmplifiedQft, empty_errors);
        for (std::size_t i = 0; i < direct.probs.size(); ++i) {
            REQUIRE(direct.probs[i] == via_stream.probs[i]);
        }
    }

    SECTION("noisy trials keep tables, ratios and recovery coherent") {
        const ErrorStreamRecord record = run_error_stream_experiment(
            1024, 7, 5, 208, 6.0 / 1017.0, 20, 12345);
        REQUIRE(record.max_abs_diff < 1e-9);
        REQUIRE(record.all_ratios_in_bounds);
        REQUIRE(record.trials.size() == 20);
        // the amplified pipeline should dominate the unamplified ones
        REQUIRE(record.empirical_success[0] >= record.empirical_success[1]);
    }

    SECTION("growing error sets push the success probability down") {
        // mean analytic success over sampled error sets, small L vs larger L
        // (both well below the bound-curve minimizer)
        const auto mean_success = [](double rate) {
            const ErrorStreamRecord record = run_error_stream_experiment(
                1024, 7, 5, 208, rate, 12, 2718);
            double acc = 0.0;
            for (const auto& trial : record.trials) {
                acc += trial.outcome[0].analytic_success;
            }
            return acc / static_cast<double>(record.trials.size());
        };
        const double no_errors = success_probability(
            AlgKind::AmplifiedQft, CompositeOracle{PeriodicSet(1024, 208, 5, 7)});
        const double small_l = mean_success(6.0 / 1017.0);
        const double larger_l = mean_success(40.0 / 1017.0);
        REQUIRE(no_errors > small_l);
        REQUIRE(small_l > larger_l);
    }

    SECTION("bit-identical reruns") {
        const ErrorStreamRecord a = run_error_stream_experiment(
            256, 4, 6, 3, 0.02, 8, 777);
        const ErrorStreamRecord b = run_error_stream_experiment(
            256, 4, 6, 3, 0.02, 8, 777);
        REQUIRE(a.max_abs_diff == b.max_abs_diff);
        for (std::size_t i = 0; i < a.trials.size(); ++i) {
            REQUIRE(a.trials[i].error_labels == b.trials[i].error_labels);
            for (int alg = 0; alg < 3; ++alg) {
                REQUIRE(a.trials[i].outcome[alg].measured_y ==
                        b.trials[i].outcome[alg].measured_y);
            }
        }
    }
}

TEST_CASE("error-set size sweep", "[montecarlo]") {
    SECTION("estimates track the exact means and the bowl shape") {
        std::vector<int64_t> grid;
        for (int64_t l = 0; l <= 480; l += 20) {
            grid.push_back(l);
        }
        const MinLSweepResult sweep = min_l_sweep(1024, 7, 208, grid, 2000, 31337);

        for (const MinLPoint& point : sweep.points) {
            REQUIRE(point.sampled_mean ==
                    Catch::Approx(point.exact_mean).epsilon(0.02));
        }

        const auto at = [&](int64_t l) {
            for (const MinLPoint& point : sweep.points) {
                if (point.l == l) {
                    return point;
                }
            }
            FAIL("grid point missing");
            return sweep.points.front();
        };
        const auto near_min = at(160);
        REQUIRE(at(0).sampled_bound > near_min.sampled_bound);
        REQUIRE(at(480).bound_curve > near_min.bound_curve);    // rises past the minimum
        REQUIRE(at(480).sampled_bound > near_min.sampled_bound);

        REQUIRE(std::abs(sweep.closed_form - sweep.grid_minimizer) <= 0.5);
        REQUIRE(std::abs(static_cast<double>(sweep.empirical_minimizer) -
                         sweep.closed_form) <= std::max(2.0, 0.05 * sweep.closed_form) + 20.0);
    }

    SECTION("reproducible under a fixed seed") {
        const std::vector<int64_t> grid = {0, 50, 100, 150, 200};
        const MinLSweepResult a = min_l_sweep(1024, 7, 208, grid, 500, 2);
        const MinLSweepResult b = min_l_sweep(1024, 7, 208, grid, 500, 2);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            REQUIRE(a.points[i].sampled_mean == b.points[i].sampled_mean);
        }
    }

    SECTION("rejects an out-of-range grid") {
        REQUIRE_THROWS_AS(min_l_sweep(1024, 7, 208, {2000}, 10, 1),
                          std::invalid_argument);
    }
}
