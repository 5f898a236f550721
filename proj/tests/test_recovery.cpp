#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <set>

#include "aqt/analytic.hpp"
#include "aqt/numerics.hpp"
#include "aqt/recovery.hpp"
#include "aqt/statevector.hpp"

using namespace aqt;

TEST_CASE("continued-fraction period recovery", "[recovery]") {
    SECTION("worked values") {
        const RecoveryResult a = recover_period(205, 1024);
        REQUIRE(a.status == RecoveryStatus::Recovered);
        REQUIRE(a.d == 1);
        REQUIRE(a.period == 5);

        const RecoveryResult b = recover_period(410, 1024);
        REQUIRE(b.status == RecoveryStatus::Recovered);
        REQUIRE(b.d == 2);
        REQUIRE(b.period == 5);

        REQUIRE(recover_period(0, 1024).status == RecoveryStatus::Failed);
    }

    SECTION("success-set completeness at the flagship size") {
        const std::set<int64_t> s_members = [&] {
            const auto v = success_set(1024, 5);
            return std::set<int64_t>(v.begin(), v.end());
        }();
        for (int64_t y = 0; y < 1024; ++y) {
            const RecoveryResult result = recover_period(y, 1024);
            if (s_members.count(y) == 1) {
                REQUIRE(result.status != RecoveryStatus::Failed);
            }
            // peak labels |{Py}_N| <= P/2 recover the period itself
            const int64_t resid = ((5 * y) % 1024 + 1024) % 1024;
            const int64_t centered = resid > 512 ? resid - 1024 : resid;
            if (y != 0 && 2 * (centered < 0 ? -centered : centered) <= 5) {
                REQUIRE(result.status == RecoveryStatus::Recovered);
                REQUIRE(result.period == 5);
            }
        }
    }

    SECTION("outside the success set no denominator-5 convergent passes") {
        const std::set<int64_t> s_members = [&] {
            const auto v = success_set(1024, 5);
            return std::set<int64_t>(v.begin(), v.end());
        }();
        for (int64_t y = 1; y < 1024; ++y) {
            if (s_members.count(y) == 1) {
                continue;
            }
            for (const Rational& c : convergents(y, 1024)) {
                if (c.den != 5 || std::gcd(c.num, c.den) != 1) {
                    continue;
                }
                const int64_t resid = y * 5 - c.num * 1024;
                REQUIRE_FALSE(2 * 5 * (resid < 0 ? -resid : resid) <= 1024);
            }
        }
    }

    SECTION("divisor recoveries classify as rerun candidates") {
        // measurement at the d = 2 peak of a period-6 set reduces to 1/3
        const int64_t n = 4096;
        const int64_t y = (2 * n + 3) / 6;  // round(2N/6)
        const RecoveryResult r = recover_period(y, n);
        REQUIRE(r.status == RecoveryStatus::Recovered);
        REQUIRE(r.period == 3);
        REQUIRE(classify_recovery(r, 6) == RecoveryStatus::NeedRerun);
        REQUIRE(classify_recovery(r, 3) == RecoveryStatus::Recovered);
        REQUIRE(classify_recovery(r, 5) == RecoveryStatus::Failed);
    }

    SECTION("trace records the scanned convergents") {
        std::vector<ConvergentProbe> trace;
        recover_period(205, 1024, &trace);
        REQUIRE_FALSE(trace.empty());
        REQUIRE(trace.back().distance_ok);
        REQUIRE(trace.back().q == 5);
    }
}

TEST_CASE("period verification probes", "[recovery]") {
    const CompositeOracle oracle{PeriodicSet(1024, 208, 5, 7)};

    SECTION("worked probes") {
        REQUIRE(verify_period(oracle, 208, 5, 7));
        REQUIRE_FALSE(verify_period(oracle, 208, 10, 7));  // f(268) = 0
        REQUIRE_FALSE(verify_period(oracle, 208, 4, 7));   // f(212) = 0
        REQUIRE(verify_pair(oracle, 208, 5, 7));
        REQUIRE_FALSE(verify_pair(oracle, 213, 5, 7));  // 213 + 30 leaves the set
        REQUIRE_FALSE(verify_pair(oracle, 100, 5, 7));
    }

    SECTION("probes beyond the label range read as zero") {
        REQUIRE_FALSE(verify_period(oracle, 208, 200, 7));
    }

    SECTION("exhaustive soundness at small sizes") {
        const int64_t n = 256;
        for (const auto& [s, p, m] : {std::tuple<int64_t, int64_t, int64_t>{17, 3, 5},
                                     {0, 7, 4},
                                     {100, 13, 2},
                                     {240, 2, 8}}) {
            const CompositeOracle small{PeriodicSet(n, s, p, m)};
            for (int64_t p1 = 1; p1 * p1 <= n; ++p1) {
                REQUIRE(verify_period(small, s, p1, m) == (p1 == p));
            }
            for (int64_t s1 = 0; s1 < n; ++s1) {
                for (int64_t p1 = 1; p1 * p1 <= n; ++p1) {
                    REQUIRE(verify_pair(small, s1, p1, m) == (s1 == s && p1 == p));
                }
            }
        }
    }

    SECTION("candidate scan at N = 1024") {
        const CompositeOracle flagship{PeriodicSet(1024, 208, 5, 7)};
        for (int64_t s1 = 0; s1 < 1024; ++s1) {
            for (int64_t p1 = 1; p1 <= 32; ++p1) {
                REQUIRE(verify_pair(flagship, s1, p1, 7) == (s1 == 208 && p1 == 5));
            }
        }
        // random valid instances, all candidate periods
        SplitMix64 rng(0x50fa);
        for (int rep = 0; rep < 200; ++rep) {
            const auto p = static_cast<int64_t>(2 + uniform_below(rng, 31));
            const auto m = static_cast<int64_t>(2 + uniform_below(rng, 10));
            if ((m - 1) * p > 1023) {
                continue;
            }
            const auto s = static_cast<int64_t>(
                uniform_below(rng, static_cast<std::uint64_t>(1024 - (m - 1) * p)));
            const CompositeOracle oracle{PeriodicSet(1024, s, p, m)};
            for (int64_t p1 = 1; p1 <= 32; ++p1) {
                REQUIRE(verify_period(oracle, s, p1, m) == (p1 == p));
            }
        }
    }
}

TEST_CASE("offset search by decreasing measurements", "[recovery]") {
    const CompositeOracle oracle{PeriodicSet(1024, 208, 5, 7)};

    SECTION("finds the flagship offset") {
        SplitMix64 rng(2024);
        const OffsetSearch result = find_offset_decreasing(oracle, 5, 7, rng);
        REQUIRE(result.ok);
        REQUIRE(result.offset == 208);
    }

    SECTION("wrong period is detected") {
        SplitMix64 rng(11);
        const OffsetSearch result = find_offset_decreasing(oracle, 4, 7, rng);
        REQUIRE_FALSE(result.ok);
    }

    SECTION("round count stays logarithmic in M") {
        const int64_t runs = 1000;
        double total_rounds = 0.0;
        for (int64_t i = 0; i < runs; ++i) {
            SplitMix64 rng = substream(5150, static_cast<std::uint64_t>(i));
            const OffsetSearch result = find_offset_decreasing(oracle, 5, 7, rng);
            REQUIRE(result.ok);
            REQUIRE(result.offset == 208);
            total_rounds += static_cast<double>(result.rounds);
        }
        const double mean_rounds = total_rounds / static_cast<double>(runs);
        REQUIRE(mean_rounds <= 3.0 * std::log2(7.0));
    }
}

TEST_CASE("offset search by exact counting", "[recovery]") {
    const CompositeOracle oracle{PeriodicSet(1024, 208, 5, 7)};

    SECTION("counts the rungs below the measured member") {
        oracle.reset_query_count();
        const OffsetSearch from_top = find_offset_counting(oracle, 5, 7, 238);
        REQUIRE(from_top.ok);
        REQUIRE(from_top.offset == 208);
        REQUIRE(from_top.rounds == 6);  // R = r_1
        // the quoted counting cost plus three verification probes
        const auto expected_charge = static_cast<std::uint64_t>(
            std::ceil(std::sqrt((6.0 + 1.0) * (8.0 - 6.0 + 1.0))));
        REQUIRE(oracle.query_count() == expected_charge + 3);
    }

    SECTION("measured member already at the offset") {
        const OffsetSearch at_offset = find_offset_counting(oracle, 5, 7, 208);
        REQUIRE(at_offset.ok);
        REQUIRE(at_offset.offset == 208);
        REQUIRE(at_offset.rounds == 0);
    }

    SECTION("every member maps back to the offset") {
        for (int64_t r = 0; r < 7; ++r) {
            const OffsetSearch result = find_offset_counting(oracle, 5, 7, 208 + 5 * r);
            REQUIRE(result.ok);
            REQUIRE(result.offset == 208);
        }
    }

    SECTION("wrong period fails verification") {
        REQUIRE_FALSE(find_offset_counting(oracle, 3, 7, 238).ok);
    }
}

TEST_CASE("pair family validation", "[recovery]") {
    REQUIRE_THROWS_AS(PairFamily(16, {1}), std::invalid_argument);    // odd start
    REQUIRE_THROWS_AS(PairFamily(16, {4, 4}), std::invalid_argument); // duplicate
    REQUIRE_THROWS_AS(PairFamily(16, {15}), std::invalid_argument);   // out of range
    REQUIRE_THROWS_AS(PairFamily(16, {}), std::invalid_argument);

    const PairFamily pairs(16, {2, 8});
    REQUIRE(pairs.labels() == std::vector<int64_t>{2, 3, 8, 9});
}

TEST_CASE("pairwise constant-or-balanced decision", "[recovery]") {
    SECTION("four-dim case puts at least half the mass on the answer") {
        // A = {0, 1}, constant signal: exact lower-half probability
        const PairFamily pairs(4, {0});
        StateVector state = grover_no_measure(4, pairs.labels());
        // constant signal 0 everywhere: no sign flips
        apply_haar(state, false);
        const double lower_half =
            std::norm(state.amps[0]) + std::norm(state.amps[1]);
        REQUIRE(lower_half >= 1.0 - 2.0 * 1.0 / 4.0);
    }

    SECTION("thousand-label family decides both ways reliably") {
        const int64_t n = 1024, m = 7;
        std::vector<int64_t> evens;
        for (int64_t i = 0; i < m; ++i) {
            evens.push_back(100 + 14 * i);
        }
        const PairFamily pairs(n, evens);
        const int64_t trials = 300;
        int64_t constant_right = 0, balanced_right = 0;
        for (int64_t i = 0; i < trials; ++i) {
            SplitMix64 rng = substream(8080, static_cast<std::uint64_t>(i));
            std::vector<std::uint8_t> signal(static_cast<std::size_t>(n));
            for (auto& bit : signal) {
                bit = static_cast<std::uint8_t>(uniform_below(rng, 2));
            }
            for (const int64_t e : evens) {
                signal[static_cast<std::size_t>(e + 1)] = signal[static_cast<std::size_t>(e)];
            }
            if (haar_decide(pairs, signal, rng) == HaarDecision::Constant) {
                ++constant_right;
            }
            for (const int64_t e : evens) {
                signal[static_cast<std::size_t>(e + 1)] =
                    static_cast<std::uint8_t>(1 - signal[static_cast<std::size_t>(e)]);
            }
            if (haar_decide(pairs, signal, rng) == HaarDecision::Balanced) {
                ++balanced_right;
            }
        }
        const double bound = 1.0 - 2.0 * static_cast<double>(m) / static_cast<double>(n);
        const double slack =
            4.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
        REQUIRE(static_cast<double>(constant_right) / static_cast<double>(trials) >=
                bound - slack);
        REQUIRE(static_cast<double>(balanced_right) / static_cast<double>(trials) >=
                bound - slack);
    }
}

TEST_CASE("classical sample size and crossover", "[recovery]") {
    SECTION("large-N limit approaches 36 M") {
        const SampleSizeResult tiny = classical_sample_size(int64_t{1} << 20, 7);
        REQUIRE(tiny.n == Catch::Approx(36.0 * 7.0).epsilon(1e-4));
    }

    SECTION("flagship evaluation") {
        const SampleSizeResult s = classical_sample_size(1024, 7);
        REQUIRE(s.n > 0.0);
        REQUIRE(s.n == Catch::Approx(36.0 * 7.0 * (1.0 - 7.0 / 1024.0) /
                                     std::pow(1.0 - 14.0 / 1024.0, 2)));
        REQUIRE(s.amplified_wins == (std::sqrt(1024.0 / 14.0) < s.n));
    }

    SECTION("crossover agrees with its cube-root form") {
        for (const auto& [n, m] : {std::pair<int64_t, int64_t>{1024, 7},
                                  {1024, 2},
                                  {4096, 3},
                                  {65536, 5},
                                  {1 << 20, 2}}) {
            const SampleSizeResult s = classical_sample_size(n, m);
            const double frac = static_cast<double>(m) / static_cast<double>(n);
            const double rhs = std::pow(static_cast<double>(n), 1.0 / 3.0) *
                               std::pow(1.0 - 2.0 * frac, 4.0 / 3.0) /
                               (std::pow(2592.0, 1.0 / 3.0) *
                                std::pow(1.0 - frac, 2.0 / 3.0));
            REQUIRE(s.amplified_wins == (static_cast<double>(m) > rhs));
        }
    }
}
