#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace aqt {

using std::int64_t;

// Reduced fraction; den > 0 and gcd(num, den) = 1 after construction.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d);

    friend bool operator==(const Rational&, const Rational&) = default;
};

// Measurement-label classification shared by all per-label probability
// tables:
//   A: y = 0
//   B: P*y == 0 (mod N), y != 0
//   C: P*y != 0 and M*P*y != 0 (mod N)
//   D: P*y != 0 and M*P*y == 0 (mod N)
enum class CaseTag { A, B, C, D };

const char* to_string(CaseTag tag);

// omega^e with omega = exp(-2*pi*i/n); the exponent is reduced mod n in
// integer arithmetic before any trig evaluation.
std::complex<double> root_power(int64_t n, int64_t e);

// sum_{r=0}^{m-1} omega^{r*p*y}.  Equals m when p*y == 0 (mod n), else the
// closed ratio (1 - omega^{m*p*y}) / (1 - omega^{p*y}) evaluated in a
// cancellation-free sine form.
std::complex<double> geometric_phase_sum(int64_t n, int64_t m, int64_t p,
                                         int64_t y);

// sin^2(pi*m*p*y/n) / sin^2(pi*p*y/n) == |geometric_phase_sum|^2, with the
// limit value m^2 at p*y == 0 (mod n).  Always in [0, m^2].
double dirichlet_ratio(int64_t n, int64_t m, int64_t p, int64_t y);

CaseTag classify_case(int64_t n, int64_t m, int64_t p, int64_t y);

// All continued-fraction convergents of num/den (0 <= num <= den, den > 0)
// in increasing-denominator order; the last equals num/den exactly.
std::vector<Rational> convergents(int64_t num, int64_t den);

// Euler totient.
int64_t totient(int64_t p);

}  // namespace aqt
