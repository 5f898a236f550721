#include "aqt/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "aqt/kernels.hpp"
#include "aqt/numerics.hpp"

namespace aqt {

namespace {

void require_power_of_two(int64_t n) {
    if (n < 2 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
        throw std::invalid_argument("state size must be a power of two >= 2");
    }
}

// Iterative radix-2 decimation-in-time transform with the exp(-2*pi*i/n)
// root convention.  Twiddle tables are built once per size and reused.
class Fft {
  public:
    explicit Fft(std::size_t n) : n_(n) {
        bitrev_.resize(n);
        std::size_t j = 0;
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) {
                j ^= bit;
            }
            j ^= bit;
            bitrev_[i] = j;
        }
        for (std::size_t len = 2; len <= n; len <<= 1) {
            std::vector<cdouble> tw(len / 2);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const double ang = -2.0 * std::numbers::pi *
                                   static_cast<double>(k) /
                                   static_cast<double>(len);
                tw[k] = {std::cos(ang), std::sin(ang)};
            }
            twiddles_.push_back(std::move(tw));
        }
    }

    // Unnormalized: out[y] = sum_z x[z] w^{zy}
    void forward(cdouble* x) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (i < bitrev_[i]) {
                std::swap(x[i], x[bitrev_[i]]);
            }
        }
        const auto& k = kernels::ops();
        std::size_t stage = 0;
        for (std::size_t len = 2; len <= n_; len <<= 1, ++stage) {
            k.fft_stage(x, twiddles_[stage].data(), n_, len);
        }
    }

  private:
    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::vector<cdouble>> twiddles_;
};

const Fft& fft_plan(std::size_t n) {
    thread_local std::unordered_map<std::size_t, Fft> plans;
    auto it = plans.find(n);
    if (it == plans.end()) {
        it = plans.emplace(n, Fft(n)).first;
    }
    return it->second;
}

}  // namespace

StateVector StateVector::uniform(int64_t n) {
    require_power_of_two(n);
    StateVector s;
    s.amps.assign(static_cast<std::size_t>(n),
                  cdouble{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    return s;
}

double StateVector::norm_sq() const {
    return kernels::ops().norm_sq(amps.data(), amps.size());
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps.size());
    kernels::ops().abs_sq(amps.data(), p.data(), amps.size());
    return p;
}

GroverParams GroverParams::for_marked(int64_t n, int64_t t) {
    if (t < 1 || t >= n) {
        throw std::invalid_argument("GroverParams: marked count must be in [1, n)");
    }
    GroverParams g;
    if (2 * t == n) {
        // theta = pi/4 exactly; asin can land an ulp high and floor
        // pi/(4 theta) = 1 down to 0
        g.theta = std::numbers::pi / 4.0;
        g.k = 1;
        g.a_k = std::sin(3.0 * g.theta) / std::sqrt(static_cast<double>(t));
        g.b_k = std::cos(3.0 * g.theta) / std::sqrt(static_cast<double>(n - t));
        return g;
    }
    g.theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
    g.k = static_cast<int64_t>(std::floor(std::numbers::pi / (4.0 * g.theta)));
    const double phase = (2.0 * static_cast<double>(g.k) + 1.0) * g.theta;
    g.a_k = std::sin(phase) / std::sqrt(static_cast<double>(t));
    g.b_k = std::cos(phase) / std::sqrt(static_cast<double>(n - t));
    return g;
}

void oracle_phase_flip(StateVector& state, const CompositeOracle& oracle) {
    if (state.size() != oracle.n()) {
        throw std::invalid_argument("oracle_phase_flip: size mismatch");
    }
    for (const int64_t z : oracle.marked_labels()) {
        state.amps[static_cast<std::size_t>(z)] = -state.amps[static_cast<std::size_t>(z)];
    }
    oracle.charge(1);
}

void grover_diffusion(StateVector& state) {
    const cdouble total = kernels::ops().sum(state.amps.data(), state.amps.size());
    const cdouble mean = total / static_cast<double>(state.size());
    kernels::ops().reflect(state.amps.data(), mean, state.amps.size());
}

StateVector grover_no_measure(int64_t n, std::span<const int64_t> marked) {
    require_power_of_two(n);
    const auto t = static_cast<int64_t>(marked.size());
    const GroverParams params = GroverParams::for_marked(n, t);
    StateVector state = StateVector::uniform(n);
    for (int64_t iter = 0; iter < params.k; ++iter) {
        for (const int64_t z : marked) {
            state.amps[static_cast<std::size_t>(z)] = -state.amps[static_cast<std::size_t>(z)];
        }
        grover_diffusion(state);
    }
    return state;
}

StateVector grover_no_measure(const CompositeOracle& oracle) {
    const auto marked = oracle.marked_labels();
    const GroverParams params = GroverParams::for_marked(
        oracle.n(), static_cast<int64_t>(marked.size()));
    oracle.charge(static_cast<std::uint64_t>(params.k));
    return grover_no_measure(oracle.n(), marked);
}

void apply_qft(StateVector& state) {
    require_power_of_two(state.size());
    const auto n = static_cast<std::size_t>(state.size());
    fft_plan(n).forward(state.amps.data());
    kernels::ops().scale(state.amps.data(), 1.0 / std::sqrt(static_cast<double>(n)), n);
}

void apply_haar(StateVector& state, bool full) {
    require_power_of_two(state.size());
    const auto n = static_cast<std::size_t>(state.size());
    std::vector<cdouble> scratch(n);
    // factor k acts on the leading 2^(log2(n)-k+1) entries
    for (std::size_t block = n; block >= 2; block /= 2) {
        kernels::ops().haar_pair(state.amps.data(), scratch.data(), block / 2);
        std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(block),
                  state.amps.begin());
        if (!full) {
            break;
        }
    }
}

std::vector<double> qhs_distribution(int64_t n, std::span<const int64_t> marked) {
    require_power_of_two(n);
    const auto nd = static_cast<double>(n);
    // sum_{x in C} w^{xy} for all y at once: transform of the indicator of C
    std::vector<cdouble> indicator(static_cast<std::size_t>(n), cdouble{0.0, 0.0});
    for (const int64_t x : marked) {
        indicator[static_cast<std::size_t>(x)] = 1.0;
    }
    fft_plan(static_cast<std::size_t>(n)).forward(indicator.data());

    std::vector<double> pr(static_cast<std::size_t>(n));
    for (int64_t y = 0; y < n; ++y) {
        const cdouble on = indicator[static_cast<std::size_t>(y)];
        // sum over the complement = N*delta_{y0} - sum over C
        const cdouble off = (y == 0 ? cdouble{nd, 0.0} : cdouble{0.0, 0.0}) - on;
        pr[static_cast<std::size_t>(y)] =
            (std::norm(on) + std::norm(off)) / (nd * nd);
    }
    return pr;
}

std::vector<double> qhs_distribution(const CompositeOracle& oracle) {
    oracle.charge(1);
    const auto marked = oracle.marked_labels();
    return qhs_distribution(oracle.n(), marked);
}

int64_t measure(const StateVector& state, SplitMix64& rng) {
    const std::vector<double> p = state.probabilities();
    double total = 0.0;
    for (const double v : p) {
        total += v;
    }
    const double u = uniform_double(rng) * total;
    double acc = 0.0;
    for (std::size_t y = 0; y + 1 < p.size(); ++y) {
        acc += p[y];
        if (u < acc) {
            return static_cast<int64_t>(y);
        }
    }
    return state.size() - 1;
}

double UnitaryMatrix::unitarity_defect() const {
    double worst = 0.0;
    for (int64_t i = 0; i < n_; ++i) {
        for (int64_t j = 0; j < n_; ++j) {
            cdouble dot{0.0, 0.0};
            for (int64_t k = 0; k < n_; ++k) {
                dot += std::conj(at(k, i)) * at(k, j);
            }
            if (i == j) {
                dot -= 1.0;
            }
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

UnitaryMatrix UnitaryMatrix::qft(int64_t n) {
    UnitaryMatrix u(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int64_t y = 0; y < n; ++y) {
        for (int64_t z = 0; z < n; ++z) {
            u.at(y, z) = scale * root_power(n, y * z);
        }
    }
    return u;
}

StateVector apply_general_unitary(const StateVector& state,
                                  const UnitaryMatrix& u) {
    if (u.size() != state.size()) {
        throw std::invalid_argument("apply_general_unitary: size mismatch");
    }
    if (u.unitarity_defect() > 1e-8) {
        throw std::invalid_argument("apply_general_unitary: matrix is not unitary");
    }
    StateVector out;
    out.amps.assign(state.amps.size(), cdouble{0.0, 0.0});
    for (int64_t y = 0; y < state.size(); ++y) {
        cdouble acc{0.0, 0.0};
        for (int64_t z = 0; z < state.size(); ++z) {
            acc += u.at(y, z) * state.amps[static_cast<std::size_t>(z)];
        }
        out.amps[static_cast<std::size_t>(y)] = acc;
    }
    return out;
}

}  // namespace aqt
