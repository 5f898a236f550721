#include "aqt/numerics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace aqt {

namespace {

// a mod m in [0, m)
int64_t pos_mod(int64_t a, int64_t m) {
    const int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::A: return "A";
        case CaseTag::B: return "B";
        case CaseTag::C: return "C";
        case CaseTag::D: return "D";
    }
    return "?";
}

std::complex<double> root_power(int64_t n, int64_t e) {
    if (n < 1) {
        throw std::invalid_argument("root_power: n must be positive");
    }
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(pos_mod(e, n)) /
        static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> geometric_phase_sum(int64_t n, int64_t m, int64_t p,
                                         int64_t y) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("geometric_phase_sum: need n >= 1, m >= 1");
    }
    const int64_t py = pos_mod(p * y, n);
    if (py == 0) {
        return {static_cast<double>(m), 0.0};
    }
    // (1 - w^{mpy}) / (1 - w^{py}) = e^{-i*pi*(m-1)*py/n} * sin(pi*m*py/n)
    //                                / sin(pi*py/n),
    // evaluated with exponents reduced mod 2n so the sines keep their sign.
    const double pi = std::numbers::pi;
    const int64_t two_n = 2 * n;
    const int64_t mpy2 = pos_mod(m * py, two_n);
    const int64_t phase2 = pos_mod((m - 1) * py, two_n);
    const double ratio = std::sin(pi * static_cast<double>(mpy2) /
                                  static_cast<double>(n)) /
                         std::sin(pi * static_cast<double>(py) /
                                  static_cast<double>(n));
    const double arg =
        -pi * static_cast<double>(phase2) / static_cast<double>(n);
    return ratio * std::complex<double>{std::cos(arg), std::sin(arg)};
}

double dirichlet_ratio(int64_t n, int64_t m, int64_t p, int64_t y) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("dirichlet_ratio: need n >= 1, m >= 1");
    }
    const int64_t py = pos_mod(p * y, n);
    if (py == 0) {
        return static_cast<double>(m) * static_cast<double>(m);
    }
    const int64_t mpy = pos_mod(m * py, n);
    if (mpy == 0) {
        return 0.0;
    }
    const double pi = std::numbers::pi;
    const double num = std::sin(pi * static_cast<double>(mpy) /
                                static_cast<double>(n));
    const double den = std::sin(pi * static_cast<double>(py) /
                                static_cast<double>(n));
    const double r = num / den;
    return r * r;
}

CaseTag classify_case(int64_t n, int64_t m, int64_t p, int64_t y) {
    if (y == 0) {
        return CaseTag::A;
    }
    const int64_t py = pos_mod(p * y, n);
    if (py == 0) {
        return CaseTag::B;
    }
    return pos_mod(m * py, n) == 0 ? CaseTag::D : CaseTag::C;
}

std::vector<Rational> convergents(int64_t num, int64_t den) {
    if (den <= 0) {
        throw std::invalid_argument("convergents: denominator must be positive");
    }
    if (num < 0 || num > den) {
        throw std::invalid_argument("convergents: need 0 <= num <= den");
    }
    std::vector<Rational> out;
    // h_k = a_k h_{k-1} + h_{k-2}, same for the denominators
    int64_t h_prev = 1, h_prev2 = 0;
    int64_t k_prev = 0, k_prev2 = 1;
    int64_t a = num, b = den;
    while (true) {
        const int64_t q = a / b;
        const int64_t h = q * h_prev + h_prev2;
        const int64_t k = q * k_prev + k_prev2;
        Rational c;
        c.num = h;
        c.den = k;
        out.push_back(c);
        const int64_t r = a - q * b;
        if (r == 0) {
            break;
        }
        a = b;
        b = r;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

int64_t totient(int64_t p) {
    if (p < 1) {
        throw std::invalid_argument("totient: argument must be positive");
    }
    int64_t result = p;
    int64_t x = p;
    for (int64_t q = 2; q * q <= x; ++q) {
        if (x % q == 0) {
            result -= result / q;
            while (x % q == 0) {
                x /= q;
            }
        }
    }
    if (x > 1) {
        result -= result / x;
    }
    return result;
}

}  // namespace aqt
