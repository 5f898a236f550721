#include "aqt/analytic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace aqt {

namespace {

// sum_{z in G} w^{zy}
cdouble error_phase_sum(const CompositeOracle& oracle, int64_t y) {
    cdouble acc{0.0, 0.0};
    for (const int64_t z : oracle.error_labels()) {
        acc += root_power(oracle.n(), z * y);
    }
    return acc;
}

struct Angles {
    double tan2_sin2;  // tan^2(theta) sin^2(2k theta)
    double cos2;       // cos^2(2k theta)
};

Angles grover_angles(int64_t n, int64_t t) {
    const GroverParams g = GroverParams::for_marked(n, t);
    const double tan_theta = std::tan(g.theta);
    const double sin2k = std::sin(2.0 * static_cast<double>(g.k) * g.theta);
    const double cos2k = std::cos(2.0 * static_cast<double>(g.k) * g.theta);
    return {tan_theta * tan_theta * sin2k * sin2k, cos2k * cos2k};
}

}  // namespace

const char* to_string(AlgKind alg) {
    switch (alg) {
        case AlgKind::AmplifiedQft: return "amplified-qft";
        case AlgKind::Qft: return "qft";
        case AlgKind::Qhs: return "qhs";
    }
    return "?";
}

double analytic_prob(AlgKind alg, const CompositeOracle& oracle, int64_t y) {
    const int64_t n = oracle.n();
    const int64_t m = oracle.periodic().count();
    const int64_t p = oracle.periodic().period();
    const int64_t s = oracle.periodic().offset();
    const int64_t t = oracle.marked_count();
    const double nd = static_cast<double>(n);
    const double td = static_cast<double>(t);

    const CaseTag tag = classify_case(n, m, p, y);

    if (tag == CaseTag::A) {
        switch (alg) {
            case AlgKind::AmplifiedQft:
                return grover_angles(n, t).cos2;
            case AlgKind::Qft: {
                const double a = 1.0 - 2.0 * td / nd;
                return a * a;
            }
            case AlgKind::Qhs:
                return 1.0 - 2.0 * td * (nd - td) / (nd * nd);
        }
    }

    // marked-set phase sum: w^{sy} * (geometric term) + error term
    cdouble marked_sum = error_phase_sum(oracle, y);
    switch (tag) {
        case CaseTag::B:
            marked_sum += static_cast<double>(m) * root_power(n, s * y);
            break;
        case CaseTag::C:
            marked_sum += root_power(n, s * y) * geometric_phase_sum(n, m, p, y);
            break;
        default:
            break;  // case D: the periodic part sums to zero
    }
    const double mag2 = std::norm(marked_sum);

    switch (alg) {
        case AlgKind::AmplifiedQft:
            return grover_angles(n, t).tan2_sin2 * mag2 / (td * td);
        case AlgKind::Qft:
            return 4.0 * mag2 / (nd * nd);
        case AlgKind::Qhs:
            return 2.0 * mag2 / (nd * nd);
    }
    return 0.0;
}

double ProbTable::sum() const {
    double acc = 0.0;
    for (const double v : probs) {
        acc += v;
    }
    return acc;
}

ProbTable analytic_table(AlgKind alg, const CompositeOracle& oracle) {
    const int64_t n = oracle.n();
    ProbTable table;
    table.alg = alg;
    table.probs.resize(static_cast<std::size_t>(n));
    table.cases.resize(static_cast<std::size_t>(n));
    for (int64_t y = 0; y < n; ++y) {
        table.probs[static_cast<std::size_t>(y)] = analytic_prob(alg, oracle, y);
        table.cases[static_cast<std::size_t>(y)] =
            classify_case(n, oracle.periodic().count(), oracle.periodic().period(), y);
    }
    return table;
}

std::vector<double> simulate_distribution(AlgKind alg,
                                          const CompositeOracle& oracle) {
    switch (alg) {
        case AlgKind::AmplifiedQft: {
            StateVector state = grover_no_measure(oracle);
            apply_qft(state);
            return state.probabilities();
        }
        case AlgKind::Qft: {
            StateVector state = StateVector::uniform(oracle.n());
            oracle_phase_flip(state, oracle);
            apply_qft(state);
            return state.probabilities();
        }
        case AlgKind::Qhs:
            return qhs_distribution(oracle);
    }
    throw std::logic_error("simulate_distribution: unknown algorithm");
}

RatioBounds pr_ratio_bounds(AlgKind baseline, int64_t n, int64_t t) {
    if (t < 1 || 2 * t >= n) {
        throw std::invalid_argument("pr_ratio_bounds: need 0 < t < n/2");
    }
    const double nd = static_cast<double>(n);
    const double td = static_cast<double>(t);
    double scale;
    switch (baseline) {
        case AlgKind::Qft:
            scale = nd / (4.0 * td);
            break;
        case AlgKind::Qhs:
            scale = nd / (2.0 * td);
            break;
        default:
            throw std::invalid_argument("pr_ratio_bounds: baseline must be qft or qhs");
    }
    const double upper = scale * nd / (nd - td);
    const double shrink = 1.0 - 2.0 * td / nd;
    return {upper * shrink * shrink, upper};
}

std::vector<int64_t> success_set(int64_t n, int64_t p) {
    if (p < 2) {
        throw std::invalid_argument("success_set: period must be at least 2");
    }
    if (p * p > n) {
        throw std::invalid_argument("success_set: need p <= sqrt(n)");
    }
    std::vector<int64_t> out;
    for (int64_t y = 0; y < n; ++y) {
        // candidate numerators are the two integers flanking y*p/n
        const int64_t d_lo = (y * p) / n;
        for (int64_t d = d_lo; d <= d_lo + 1; ++d) {
            if (std::gcd(d, p) != 1) {
                continue;
            }
            const int64_t resid = y * p - d * n;
            if (2 * p * (resid < 0 ? -resid : resid) <= n) {
                out.push_back(y);
                break;
            }
        }
    }
    return out;
}

double success_probability(AlgKind alg, const CompositeOracle& oracle) {
    double acc = 0.0;
    for (const int64_t y : success_set(oracle.n(), oracle.periodic().period())) {
        acc += analytic_prob(alg, oracle, y);
    }
    return acc;
}

TrialBounds expected_trials(AlgKind alg, int64_t n, int64_t m) {
    if (m < 1 || 2 * m >= n) {
        throw std::invalid_argument("expected_trials: need 0 < m < n/2");
    }
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    switch (alg) {
        case AlgKind::AmplifiedQft: {
            const double theta = std::asin(std::sqrt(md / nd));
            return {std::ceil(std::numbers::pi / (4.0 * theta)) + 1.0, 0.0};
        }
        case AlgKind::Qft: {
            const double e = nd / (4.0 * md);
            const double v = (nd / (nd - md)) * ((nd - 2.0 * md) / (4.0 * md));
            return {e, v * v};
        }
        case AlgKind::Qhs: {
            const double e = nd / (2.0 * md);
            const double r = nd / (nd - md);
            const double v =
                r * r * ((nd - md) * (nd - md) + md * md) / (4.0 * md * md);
            return {e, v};
        }
    }
    throw std::logic_error("expected_trials: unknown algorithm");
}

double moment_formula(CaseTag tag, MomentKind kind, int64_t m, int64_t l,
                      int64_t n, int64_t p, int64_t y) {
    if (m < 1 || l < 0) {
        throw std::invalid_argument("moment_formula: need m >= 1, l >= 0");
    }
    const double md = static_cast<double>(m);
    const double ld = static_cast<double>(l);
    const double t2 = (ld + md) * (ld + md);
    const double t4 = t2 * t2;
    double head;  // |fixed part|^2 of the case term, scaled by T^2
    switch (tag) {
        case CaseTag::A:
            throw std::invalid_argument("moment_formula: case A has no random-sum term");
        case CaseTag::B:
            head = md * md;
            break;
        case CaseTag::C:
            if ((p * y) % n == 0) {
                throw std::invalid_argument("moment_formula: case C requires P*y != 0 mod N");
            }
            head = dirichlet_ratio(n, m, p, y);
            break;
        case CaseTag::D:
            head = 0.0;
            break;
        default:
            throw std::invalid_argument("moment_formula: bad case");
    }
    if (kind == MomentKind::Mean) {
        return (head + ld) / t2;
    }
    return (ld * ld - ld + 2.0 * head * ld) / t4;
}

double min_l_bound(int64_t n, int64_t m, double l) {
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return (l + md * md) / ((nd - (l + md)) * (l + md));
}

double min_l(int64_t n, int64_t m) {
    if (m < 2) {
        throw std::invalid_argument("min_l: need m >= 2");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return -md * md + std::sqrt(md * (md - 1.0) * (md * (md - 1.0) + nd));
}

double min_l_grid_minimizer(int64_t n, int64_t m, double step) {
    double best_l = 0.0;
    double best = min_l_bound(n, m, 0.0);
    const auto steps = static_cast<int64_t>(
        std::floor(static_cast<double>(n - m - 1) / step));
    for (int64_t i = 1; i <= steps; ++i) {
        const double l = static_cast<double>(i) * step;
        const double v = min_l_bound(n, m, l);
        if (v < best) {
            best = v;
            best_l = l;
        }
    }
    return best_l;
}

double general_amplification_bound(double alpha, int64_t m, int64_t n) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("general_amplification_bound: alpha outside [0, 1]");
    }
    const double frac = static_cast<double>(m) / static_cast<double>(n);
    const double on = alpha * frac;
    const double off = (1.0 - alpha) * (1.0 - frac);
    // expanded square; exact M/N and 1 - M/N at the endpoints
    return on + off + 2.0 * std::sqrt(on * off);
}

UncertaintySupport uncertainty_support(const StateVector& pre_qft, int64_t m) {
    StateVector state = pre_qft;
    apply_qft(state);
    int64_t n_y = 0;
    for (const double prob : state.probabilities()) {
        if (prob > 1e-18) {
            ++n_y;
        }
    }
    return {n_y, m * n_y >= state.size()};
}

int64_t expected_support(const CompositeOracle& oracle) {
    const int64_t n = oracle.n();
    const int64_t m = oracle.periodic().count();
    const int64_t p = oracle.periodic().period();
    // T > N/2 leaves zero iterations: the state stays uniform and the
    // transform collapses onto the zero label alone
    if (GroverParams::for_marked(n, oracle.marked_count()).k == 0) {
        return 1;
    }
    int64_t support = n;
    for (int64_t y = 1; y < n; ++y) {
        if (classify_case(n, m, p, y) == CaseTag::D) {
            --support;
        }
    }
    if (analytic_prob(AlgKind::AmplifiedQft, oracle, 0) <= 1e-18) {
        --support;
    }
    return support;
}

double totient_repeat_estimate(int64_t p) {
    return static_cast<double>(totient(p)) / static_cast<double>(p);
}

}  // namespace aqt
