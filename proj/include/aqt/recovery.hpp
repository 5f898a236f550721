#pragma once

#include <cstdint>
#include <vector>

#include "aqt/oracle.hpp"
#include "aqt/rng.hpp"

namespace aqt {

enum class RecoveryStatus { Recovered, NeedRerun, Failed };

const char* to_string(RecoveryStatus status);

struct RecoveryResult {
    RecoveryStatus status = RecoveryStatus::Failed;
    int64_t d = 0;
    int64_t period = 0;
};

// Trace of one continued-fraction scan (emitted as JSON lines by the CLI).
struct ConvergentProbe {
    int64_t d;
    int64_t q;
    bool distance_ok;
};

// Reads a period candidate off the continued-fraction expansion of y/N.
// Convergents d/q with 2 <= q <= floor(sqrt(N)) are scanned from the
// largest denominator down; the first satisfying 2q|yq - dN| <= N wins.
// Convergents are coprime by construction, so a successful scan reports
// Recovered; y = 0 (or no passing convergent) reports Failed.  A measured
// y whose underlying numerator shares a factor with the true period comes
// back as the reduced divisor q | P, which verification must catch.
RecoveryResult recover_period(int64_t y, int64_t n,
                              std::vector<ConvergentProbe>* trace = nullptr);

// Experiment-side tagging of a scan result once the true period is known:
// q = P is Recovered; q a proper divisor of P means the measurement hit a
// numerator with gcd(d, P) > 1 and a rerun is needed; anything else Failed.
RecoveryStatus classify_recovery(const RecoveryResult& result,
                                 int64_t true_period);

// Three-probe confirmation f(s) = f(s+P1) = f(s+(M-1)P1) = 1.  Probes that
// leave the label range read as 0 rather than erroring, since an oversized
// candidate period is exactly what the largest probe is meant to detect.
bool verify_period(const CompositeOracle& oracle, int64_t s, int64_t p1,
                   int64_t m);

// Same three probes with the offset also putative.
bool verify_pair(const CompositeOracle& oracle, int64_t s1, int64_t p1,
                 int64_t m);

struct OffsetSearch {
    bool ok = false;
    int64_t offset = 0;
    int64_t rounds = 0;  // measurement rounds consumed
};

// Offset search by a decreasing sequence of amplified measurements: an
// initial Grover run lands on some s + r1*P, then each round amplifies the
// T-point ladder g(x) = max(0, x1 - (x+1)P) restricted to marked rungs and
// measures a strictly smaller member, until r = 0 is confirmed by probing
// f(x1 - P).  Expected O(log2 M) rounds; a wrong P fails verification.
OffsetSearch find_offset_decreasing(const CompositeOracle& oracle, int64_t p,
                                    int64_t m, SplitMix64& rng);

// Offset from one measured member x1 = s + r1*P via an exact count R of the
// marked ladder rungs; the counting step is charged the quoted
// ceil(sqrt((R+1)(T-R+1))) oracle applications.  s = x1 - R*P, verified.
OffsetSearch find_offset_counting(const CompositeOracle& oracle, int64_t p,
                                  int64_t m, int64_t x1);

enum class HaarDecision { Constant, Balanced };

const char* to_string(HaarDecision d);

// Marked family for the pairwise decision problem: M disjoint pairs
// {e, e+1} with e even.
class PairFamily {
  public:
    PairFamily(int64_t n, std::vector<int64_t> even_starts);

    int64_t n() const { return n_; }
    int64_t pair_count() const { return static_cast<int64_t>(starts_.size()); }
    std::vector<int64_t> labels() const;  // all 2M members, sorted

  private:
    int64_t n_;
    std::vector<int64_t> starts_;
};

// Decides whether a +/-1 signal is constant or balanced on every marked
// pair: Grover-amplify the 2M pair labels, encode the signal as amplitude
// signs, apply the first Haar factor and measure.  Lands in [0, N/2) for
// constant signals with probability >= 1 - 2M/N.
HaarDecision haar_decide(const PairFamily& pairs,
                         const std::vector<std::uint8_t>& signal,
                         SplitMix64& rng);

struct SampleSizeResult {
    double n;              // classical sample size 36M(1-M/N)/(1-2M/N)^2
    bool amplified_wins;   // sqrt(N/2M) < n
};

SampleSizeResult classical_sample_size(int64_t n, int64_t m);

}  // namespace aqt
