#include "aqt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace aqt {

PeriodicSet::PeriodicSet(int64_t n, int64_t s, int64_t p, int64_t m)
    : n_(n), s_(s), p_(p), m_(m) {
    if (n < 4 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
        throw std::invalid_argument("PeriodicSet: n must be a power of two >= 4");
    }
    if (p < 1 || p * p > n) {
        throw std::invalid_argument("PeriodicSet: need 1 <= p <= sqrt(n)");
    }
    if (m < 1) {
        throw std::invalid_argument("PeriodicSet: need m >= 1");
    }
    if (s < 0 || s >= n) {
        throw std::invalid_argument("PeriodicSet: offset out of range");
    }
    if (s + (m - 1) * p > n - 1) {
        throw std::invalid_argument("PeriodicSet: set overflows the label range");
    }
}

std::vector<int64_t> PeriodicSet::enumerate() const {
    std::vector<int64_t> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int64_t r = 0; r < m_; ++r) {
        out.push_back(s_ + r * p_);
    }
    return out;
}

ErrorStream sample_error_stream(const PeriodicSet& set, double p,
                                SplitMix64& rng) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("sample_error_stream: rate outside [0, 1]");
    }
    ErrorStream out;
    out.rate = p;
    for (int64_t x = 0; x < set.n(); ++x) {
        if (!set.contains(x) && bernoulli(rng, p)) {
            out.labels.push_back(x);
        }
    }
    return out;
}

ErrorStream sample_error_stream_of_size(const PeriodicSet& set, int64_t size,
                                        SplitMix64& rng) {
    if (size < 0 || size > set.n() - set.count()) {
        throw std::invalid_argument("sample_error_stream_of_size: bad size");
    }
    std::vector<int64_t> pool;
    pool.reserve(static_cast<std::size_t>(set.n() - set.count()));
    for (int64_t x = 0; x < set.n(); ++x) {
        if (!set.contains(x)) {
            pool.push_back(x);
        }
    }
    // partial Fisher-Yates
    for (int64_t i = 0; i < size; ++i) {
        const auto j = i + static_cast<int64_t>(uniform_below(
                               rng, static_cast<std::uint64_t>(pool.size() - i)));
        std::swap(pool[i], pool[j]);
    }
    ErrorStream out;
    out.labels.assign(pool.begin(), pool.begin() + size);
    std::sort(out.labels.begin(), out.labels.end());
    return out;
}

CompositeOracle::CompositeOracle(PeriodicSet periodic,
                                 std::optional<ErrorStream> errors)
    : periodic_(periodic), errors_(std::move(errors)) {
    if (errors_.has_value()) {
        for (const int64_t z : errors_->labels) {
            if (z < 0 || z >= periodic_.n()) {
                throw std::invalid_argument("CompositeOracle: error label out of range");
            }
            if (periodic_.contains(z)) {
                throw std::invalid_argument("CompositeOracle: error set intersects the periodic set");
            }
        }
        if (!std::is_sorted(errors_->labels.begin(), errors_->labels.end())) {
            std::sort(errors_->labels.begin(), errors_->labels.end());
        }
    }
}

bool CompositeOracle::contains(int64_t x) const {
    if (periodic_.contains(x)) {
        return true;
    }
    if (!errors_.has_value()) {
        return false;
    }
    return std::binary_search(errors_->labels.begin(), errors_->labels.end(), x);
}

int CompositeOracle::query(int64_t x) const {
    if (x < 0 || x >= periodic_.n()) {
        throw std::out_of_range("CompositeOracle::query: label out of range");
    }
    ++queries_;
    return contains(x) ? 1 : 0;
}

const std::vector<int64_t>& CompositeOracle::error_labels() const {
    static const std::vector<int64_t> empty;
    return errors_.has_value() ? errors_->labels : empty;
}

int64_t CompositeOracle::error_count() const {
    return errors_.has_value() ? errors_->size() : 0;
}

std::vector<int64_t> CompositeOracle::marked_labels() const {
    std::vector<int64_t> out = periodic_.enumerate();
    if (errors_.has_value()) {
        out.insert(out.end(), errors_->labels.begin(), errors_->labels.end());
        std::sort(out.begin(), out.end());
    }
    return out;
}

}  // namespace aqt
