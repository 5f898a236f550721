#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqt/numerics.hpp"
#include "aqt/oracle.hpp"
#include "aqt/statevector.hpp"

namespace aqt {

enum class AlgKind { AmplifiedQft, Qft, Qhs };

const char* to_string(AlgKind alg);

// Exact per-label measurement probability of the given pipeline on the
// oracle, from the closed-form case tables.  With an empty error set the
// tables reduce to the noise-free forms:
//
//   amplified-QFT   A: cos^2(2k theta)        QFT  A: (1-2M/N)^2
//                   B: tan^2 sin^2(2k theta)       B: 4 M^2/N^2
//                   C: B-value * R / M^2           C: 4 R / N^2
//                   D: 0                           D: 0
//
// (R is the Dirichlet ratio; QHS matches QFT at half weight for y != 0 and
// 1 - 2M(N-M)/N^2 at y = 0.)  With errors, theta and k derive from T = M+L
// and each case picks up the error-set phase sum.
double analytic_prob(AlgKind alg, const CompositeOracle& oracle, int64_t y);

struct ProbTable {
    AlgKind alg;
    std::vector<double> probs;
    std::vector<CaseTag> cases;

    double sum() const;
};

ProbTable analytic_table(AlgKind alg, const CompositeOracle& oracle);

// Measurement distribution of the same pipeline obtained by explicit
// statevector simulation (the cross-check route for the tables above).
std::vector<double> simulate_distribution(AlgKind alg,
                                          const CompositeOracle& oracle);

struct RatioBounds {
    double lower;
    double upper;
};

// Sandwich bounds on Pr_amplified(y)/Pr_baseline(y) for case-B/C labels;
// baseline Qft gives N/(4T) * N/(N-T) * [(1-2T/N)^2, 1] whose endpoints
// differ by exactly 1, baseline Qhs the half-weight analog differing by 2.
RatioBounds pr_ratio_bounds(AlgKind baseline, int64_t n, int64_t t);

// Labels y admitting d with gcd(d, P) = 1 and |y/N - d/P| <= 1/(2 P^2),
// evaluated as 2P|yP - dN| <= N in exact integers.  Requires 2 <= P <=
// sqrt(N).
std::vector<int64_t> success_set(int64_t n, int64_t p);

// Total analytic probability of the success set.
double success_probability(AlgKind alg, const CompositeOracle& oracle);

struct TrialBounds {
    double expected_lower;
    double variance_lower;
};

// Geometric-distribution lower bounds on repeat-until-success counts for
// the unamplified pipelines (E >= N/4M resp. N/2M); for the amplified
// pipeline the deterministic per-run transform count ceil(pi/(4 theta)) + 1
// is reported with zero variance.
TrialBounds expected_trials(AlgKind alg, int64_t n, int64_t m);

enum class MomentKind { Mean, Variance };

// Expected value / variance of the random-set modulus terms appearing in
// the case tables, under L labels drawn i.i.d. uniform:
//   B mean (M^2+L)/(L+M)^2, var (L^2-L+2M^2L)/(L+M)^4
//   C mean (R+L)/(L+M)^2,   var (L^2-L+2RL)/(L+M)^4
//   D mean L/(L+M)^2,       var (L^2-L)/(L+M)^4
double moment_formula(CaseTag tag, MomentKind kind, int64_t m, int64_t l,
                      int64_t n, int64_t p, int64_t y);

// f(L) = (L+M^2) / ((N-(L+M)) (L+M)): the L-dependence of the upper bound
// on the expected case-B probability.
double min_l_bound(int64_t n, int64_t m, double l);

// Closed-form minimizer -M^2 + sqrt(M(M-1)(M(M-1)+N)) of min_l_bound.
double min_l(int64_t n, int64_t m);

// Fine-grid minimizer of min_l_bound over [0, N-M-1] (independent check).
double min_l_grid_minimizer(int64_t n, int64_t m, double step = 0.25);

// Cauchy-Schwarz cap on any post-amplification Fourier probability when the
// marked set carries total probability alpha.
double general_amplification_bound(double alpha, int64_t m, int64_t n);

struct UncertaintySupport {
    int64_t n_y;  // labels with nonzero probability after the QFT
    bool holds;   // m * n_y >= n
};

// Counts the Fourier support of a pre-QFT state against threshold 1e-18.
UncertaintySupport uncertainty_support(const StateVector& pre_qft, int64_t m);

// Same count from exact modular arithmetic: N minus the number of case-D
// labels, minus y = 0 when its closed-form probability vanishes.
int64_t expected_support(const CompositeOracle& oracle);

// phi(P)/P: per-run probability that the recovered numerator is coprime to
// the period.
double totient_repeat_estimate(int64_t p);

}  // namespace aqt
