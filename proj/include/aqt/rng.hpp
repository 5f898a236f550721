#pragma once

#include <cstdint>
#include <limits>

namespace aqt {

// Stateless 64-bit mixer (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Fully specified generator so seeded runs are bit-identical across
// platforms and compilers (std:: distributions are not).
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<std::uint64_t>::max();
    }

    constexpr result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Counter-based stream splitting: stream `index` of a master seed is
// independent of every other index and of evaluation order.
inline SplitMix64 substream(std::uint64_t master, std::uint64_t index) {
    return SplitMix64(mix64(master) ^ mix64(mix64(index) + 0x632be59bd9b4e019ull));
}

inline double uniform_double(SplitMix64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n).
inline std::uint64_t uniform_below(SplitMix64& g, std::uint64_t n) {
    const std::uint64_t limit = SplitMix64::max() - SplitMix64::max() % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % n;
}

inline bool bernoulli(SplitMix64& g, double p) {
    return uniform_double(g) < p;
}

}  // namespace aqt
