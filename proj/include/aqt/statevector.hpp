#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "aqt/oracle.hpp"
#include "aqt/rng.hpp"

namespace aqt {

using cdouble = std::complex<double>;

// Unit-norm amplitude vector over N = 2^n labels.
struct StateVector {
    std::vector<cdouble> amps;

    static StateVector uniform(int64_t n);

    int64_t size() const { return static_cast<int64_t>(amps.size()); }
    double norm_sq() const;
    std::vector<double> probabilities() const;
};

// Rotation-angle bookkeeping for amplitude amplification over t marked
// labels out of n: sin(theta) = sqrt(t/n), k = floor(pi/(4 theta)), and the
// closed-form on/off amplitudes after k iterations.
struct GroverParams {
    double theta;
    int64_t k;
    double a_k;  // amplitude on each marked label
    double b_k;  // amplitude on each unmarked label

    static GroverParams for_marked(int64_t n, int64_t t);
};

// Sign flip on the oracle's marked labels; one oracle application is charged.
void oracle_phase_flip(StateVector& state, const CompositeOracle& oracle);

// Inversion about the mean amplitude.
void grover_diffusion(StateVector& state);

// Amplitude amplification run to k = floor(pi/(4 theta)) iterations with the
// final measurement omitted.  Simulated by the two reflections on the full
// vector; the result is two-valued (a_k on marked, b_k elsewhere).
StateVector grover_no_measure(int64_t n, std::span<const int64_t> marked);
StateVector grover_no_measure(const CompositeOracle& oracle);

// out[y] = (1/sqrt(N)) sum_z exp(-2 pi i z y / N) in[z], in place.
// O(N log N); checked against the direct O(N^2) transform in tests.
void apply_qft(StateVector& state);

// Orthogonal Haar wavelet step(s).  The first factor maps pairwise sums to
// [0, N/2) and pairwise differences to [N/2, N); `full` composes all log2(N)
// factors instead of only the first.
void apply_haar(StateVector& state, bool full = false);

// Exact measurement distribution of the two-register pipeline that stores
// the oracle bit in a second register and Fourier-transforms the first:
// Pr(y) = (|sum_{x in C} w^{xy}|^2 + |sum_{x not in C} w^{xy}|^2) / N^2.
std::vector<double> qhs_distribution(int64_t n, std::span<const int64_t> marked);
std::vector<double> qhs_distribution(const CompositeOracle& oracle);

// Standard-basis measurement; label y is drawn with probability |amps[y]|^2.
int64_t measure(const StateVector& state, SplitMix64& rng);

// Dense transform with entries U[y][z] = alpha(y, z)/sqrt(N); |alpha| need
// not be 1 but U must be unitary.
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(int64_t n) : n_(n), entries_(n * n) {}

    int64_t size() const { return n_; }
    cdouble& at(int64_t row, int64_t col) { return entries_[row * n_ + col]; }
    const cdouble& at(int64_t row, int64_t col) const {
        return entries_[row * n_ + col];
    }

    // max |(U^dagger U - I)_{ij}|
    double unitarity_defect() const;

    static UnitaryMatrix qft(int64_t n);

  private:
    int64_t n_;
    std::vector<cdouble> entries_;
};

// Applies U to the state; rejects matrices whose unitarity defect exceeds
// 1e-8.
StateVector apply_general_unitary(const StateVector& state,
                                  const UnitaryMatrix& u);

}  // namespace aqt
