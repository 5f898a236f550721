#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aqt/rng.hpp"

namespace aqt {

using std::int64_t;

// The marked set A = {s + r*P : 0 <= r < M} inside the label range [0, N).
// N is a power of two and P <= sqrt(N).  Membership is a closed-form test,
// so no table is stored and N can be large.
class PeriodicSet {
  public:
    PeriodicSet(int64_t n, int64_t s, int64_t p, int64_t m);

    int64_t n() const { return n_; }
    int64_t offset() const { return s_; }
    int64_t period() const { return p_; }
    int64_t count() const { return m_; }

    bool contains(int64_t x) const {
        return x >= s_ && (x - s_) % p_ == 0 && (x - s_) / p_ < m_;
    }

    std::vector<int64_t> enumerate() const;

  private:
    int64_t n_, s_, p_, m_;
};

// Labels where the Bernoulli error stream fired; disjoint from A and kept
// sorted so sums over the set iterate deterministically.
struct ErrorStream {
    std::vector<int64_t> labels;
    double rate = 0.0;

    int64_t size() const { return static_cast<int64_t>(labels.size()); }
};

// Each label outside A is included independently with probability p, so
// |G| ~ Binomial(N - M, p).  Bit-identical for a fixed generator state.
ErrorStream sample_error_stream(const PeriodicSet& set, double p,
                                SplitMix64& rng);

// Uniformly random subset of exactly `size` labels from the complement of A.
ErrorStream sample_error_stream_of_size(const PeriodicSet& set, int64_t size,
                                        SplitMix64& rng);

// Binary oracle h = f XOR g: 1 exactly on C = A u G, with T = |C| = M + L.
// query() counts one per call; charge() adds work-factor book entries for
// whole-superposition oracle applications and quoted counting costs.
class CompositeOracle {
  public:
    explicit CompositeOracle(PeriodicSet periodic,
                             std::optional<ErrorStream> errors = std::nullopt);

    int query(int64_t x) const;

    // Uncounted membership test for simulator internals.
    bool contains(int64_t x) const;

    void charge(std::uint64_t n) const { queries_ += n; }
    std::uint64_t query_count() const { return queries_; }
    void reset_query_count() const { queries_ = 0; }

    const PeriodicSet& periodic() const { return periodic_; }
    const std::vector<int64_t>& error_labels() const;
    bool has_errors() const { return errors_.has_value(); }

    int64_t n() const { return periodic_.n(); }
    int64_t error_count() const;
    // T = L + M
    int64_t marked_count() const { return periodic_.count() + error_count(); }
    // C = A u G, sorted
    std::vector<int64_t> marked_labels() const;

  private:
    PeriodicSet periodic_;
    std::optional<ErrorStream> errors_;
    // query counting is bookkeeping; keep the oracle shareable as const.
    // One oracle instance per thread of execution.
    mutable std::uint64_t queries_ = 0;
};

}  // namespace aqt
