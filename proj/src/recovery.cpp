#include "aqt/recovery.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aqt/numerics.hpp"
#include "aqt/statevector.hpp"

namespace aqt {

const char* to_string(RecoveryStatus status) {
    switch (status) {
        case RecoveryStatus::Recovered: return "recovered";
        case RecoveryStatus::NeedRerun: return "need-rerun";
        case RecoveryStatus::Failed: return "failed";
    }
    return "?";
}

const char* to_string(HaarDecision d) {
    return d == HaarDecision::Constant ? "constant" : "balanced";
}

RecoveryResult recover_period(int64_t y, int64_t n,
                              std::vector<ConvergentProbe>* trace) {
    if (y < 0 || y >= n) {
        throw std::invalid_argument("recover_period: label out of range");
    }
    RecoveryResult result;
    if (y == 0) {
        return result;  // only convergent is 0/1
    }
    int64_t bound = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (bound * bound > n) {
        --bound;
    }
    while ((bound + 1) * (bound + 1) <= n) {
        ++bound;
    }
    const std::vector<Rational> cf = convergents(y, n);
    for (auto it = cf.rbegin(); it != cf.rend(); ++it) {
        if (it->den > bound || it->den < 2) {
            continue;
        }
        const int64_t resid = y * it->den - it->num * n;
        const bool ok = 2 * it->den * (resid < 0 ? -resid : resid) <= n;
        if (trace != nullptr) {
            trace->push_back({it->num, it->den, ok});
        }
        if (ok) {
            result.d = it->num;
            result.period = it->den;
            result.status = std::gcd(it->num, it->den) == 1
                                ? RecoveryStatus::Recovered
                                : RecoveryStatus::NeedRerun;
            return result;
        }
    }
    return result;
}

RecoveryStatus classify_recovery(const RecoveryResult& result,
                                 int64_t true_period) {
    if (result.status == RecoveryStatus::Failed) {
        return RecoveryStatus::Failed;
    }
    if (result.period == true_period) {
        return RecoveryStatus::Recovered;
    }
    if (result.period >= 1 && true_period % result.period == 0) {
        return RecoveryStatus::NeedRerun;
    }
    return RecoveryStatus::Failed;
}

namespace {

int probe(const CompositeOracle& oracle, int64_t x) {
    if (x < 0 || x >= oracle.n()) {
        return 0;  // beyond the label range there are no marked labels
    }
    return oracle.query(x);
}

}  // namespace

bool verify_period(const CompositeOracle& oracle, int64_t s, int64_t p1,
                   int64_t m) {
    if (p1 < 1) {
        return false;
    }
    return probe(oracle, s) == 1 && probe(oracle, s + p1) == 1 &&
           probe(oracle, s + (m - 1) * p1) == 1;
}

bool verify_pair(const CompositeOracle& oracle, int64_t s1, int64_t p1,
                 int64_t m) {
    return verify_period(oracle, s1, p1, m);
}

namespace {

// Grover + measure over the oracle's marked set; repeats until the measured
// label is actually marked (each repeat is one more amplified run).
int64_t measure_marked(const CompositeOracle& oracle, SplitMix64& rng,
                       int64_t& rounds) {
    while (true) {
        ++rounds;
        const StateVector state = grover_no_measure(oracle);
        const int64_t x = measure(state, rng);
        if (oracle.query(x) == 1) {
            return x;
        }
    }
}

}  // namespace

OffsetSearch find_offset_decreasing(const CompositeOracle& oracle, int64_t p,
                                    int64_t m, SplitMix64& rng) {
    if (p < 1 || m < 1) {
        throw std::invalid_argument("find_offset_decreasing: bad parameters");
    }
    OffsetSearch out;
    int64_t x1 = measure_marked(oracle, rng, out.rounds);
    const auto t = static_cast<int64_t>(
        std::bit_ceil(static_cast<std::uint64_t>(m)));

    while (true) {
        if (probe(oracle, x1 - p) == 0) {
            // either x1 is the offset or the candidate period is wrong
            out.ok = verify_period(oracle, x1, p, m);
            out.offset = out.ok ? x1 : 0;
            return out;
        }
        // ladder g(x) = max(0, x1 - (x+1)p); marked rungs sit below x1
        std::vector<int64_t> ladder(static_cast<std::size_t>(t));
        std::vector<int64_t> marked;
        for (int64_t x = 0; x < t; ++x) {
            const int64_t g = std::max<int64_t>(0, x1 - (x + 1) * p);
            ladder[static_cast<std::size_t>(x)] = g;
            if (oracle.contains(g)) {
                marked.push_back(x);
            }
        }
        if (marked.empty()) {
            out.ok = verify_period(oracle, x1, p, m);
            out.offset = out.ok ? x1 : 0;
            return out;
        }
        ++out.rounds;
        const GroverParams params = GroverParams::for_marked(
            t, static_cast<int64_t>(marked.size()));
        oracle.charge(static_cast<std::uint64_t>(params.k));
        const StateVector state = grover_no_measure(t, marked);
        const int64_t measured = measure(state, rng);
        const int64_t x2 = ladder[static_cast<std::size_t>(measured)];
        if (x2 < x1 && oracle.query(x2) == 1) {
            x1 = x2;
        }
        // otherwise an off-target measurement; re-run the round with the
        // same x1
    }
}

OffsetSearch find_offset_counting(const CompositeOracle& oracle, int64_t p,
                                  int64_t m, int64_t x1) {
    if (p < 1 || m < 1) {
        throw std::invalid_argument("find_offset_counting: bad parameters");
    }
    OffsetSearch out;
    const auto t = static_cast<int64_t>(
        std::bit_ceil(static_cast<std::uint64_t>(m)));
    int64_t r = 0;
    for (int64_t x = 0; x < t; ++x) {
        const int64_t g = std::max<int64_t>(0, x1 - (x + 1) * p);
        if (oracle.contains(g)) {
            ++r;
        }
    }
    // quoted exact-counting cost
    oracle.charge(static_cast<std::uint64_t>(std::ceil(
        std::sqrt(static_cast<double>((r + 1) * (t - r + 1))))));
    const int64_t s = x1 - r * p;
    out.ok = s >= 0 && verify_period(oracle, s, p, m);
    out.offset = out.ok ? s : 0;
    out.rounds = r;
    return out;
}

PairFamily::PairFamily(int64_t n, std::vector<int64_t> even_starts)
    : n_(n), starts_(std::move(even_starts)) {
    if (n < 4 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
        throw std::invalid_argument("PairFamily: n must be a power of two >= 4");
    }
    if (starts_.empty()) {
        throw std::invalid_argument("PairFamily: need at least one pair");
    }
    std::sort(starts_.begin(), starts_.end());
    int64_t prev = -2;
    for (const int64_t e : starts_) {
        if (e < 0 || e + 1 >= n_) {
            throw std::invalid_argument("PairFamily: pair out of range");
        }
        if (e % 2 != 0) {
            throw std::invalid_argument("PairFamily: pair start must be even");
        }
        if (e == prev) {
            throw std::invalid_argument("PairFamily: duplicate pair");
        }
        prev = e;
    }
}

std::vector<int64_t> PairFamily::labels() const {
    std::vector<int64_t> out;
    out.reserve(starts_.size() * 2);
    for (const int64_t e : starts_) {
        out.push_back(e);
        out.push_back(e + 1);
    }
    return out;
}

HaarDecision haar_decide(const PairFamily& pairs,
                         const std::vector<std::uint8_t>& signal,
                         SplitMix64& rng) {
    if (static_cast<int64_t>(signal.size()) != pairs.n()) {
        throw std::invalid_argument("haar_decide: signal length mismatch");
    }
    const std::vector<int64_t> marked = pairs.labels();
    StateVector state = grover_no_measure(pairs.n(), marked);
    for (std::size_t z = 0; z < signal.size(); ++z) {
        if (signal[z] != 0) {
            state.amps[z] = -state.amps[z];
        }
    }
    apply_haar(state, /*full=*/false);
    const int64_t z = measure(state, rng);
    return z < pairs.n() / 2 ? HaarDecision::Constant : HaarDecision::Balanced;
}

SampleSizeResult classical_sample_size(int64_t n, int64_t m) {
    if (m < 1 || 2 * m >= n) {
        throw std::invalid_argument("classical_sample_size: need 0 < m < n/2");
    }
    const double frac = static_cast<double>(m) / static_cast<double>(n);
    const double denom = 1.0 - 2.0 * frac;
    SampleSizeResult out;
    out.n = 36.0 * static_cast<double>(m) * (1.0 - frac) / (denom * denom);
    out.amplified_wins =
        std::sqrt(static_cast<double>(n) / (2.0 * static_cast<double>(m))) < out.n;
    return out;
}

}  // namespace aqt
