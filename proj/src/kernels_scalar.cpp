#include "aqt/kernels.hpp"

#include <cmath>

namespace aqt::kernels {

namespace {

cdouble sum_scalar(const cdouble* x, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real();
        im += x[i].imag();
    }
    return {re, im};
}

double norm_sq_scalar(const cdouble* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

void abs_sq_scalar(const cdouble* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
}

void reflect_scalar(cdouble* x, cdouble m, std::size_t n) {
    const double mr = 2.0 * m.real();
    const double mi = 2.0 * m.imag();
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {mr - x[i].real(), mi - x[i].imag()};
    }
}

void scale_scalar(cdouble* x, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {x[i].real() * s, x[i].imag() * s};
    }
}

void haar_pair_scalar(const cdouble* in, cdouble* out, std::size_t half) {
    const double inv_sqrt2 = 0.7071067811865475244;
    for (std::size_t j = 0; j < half; ++j) {
        const cdouble a = in[2 * j];
        const cdouble b = in[2 * j + 1];
        out[j] = (a + b) * inv_sqrt2;
        out[half + j] = (a - b) * inv_sqrt2;
    }
}

void fft_stage_scalar(cdouble* x, const cdouble* tw, std::size_t n,
                      std::size_t len) {
    const std::size_t half = len / 2;
    for (std::size_t base = 0; base < n; base += len) {
        for (std::size_t j = 0; j < half; ++j) {
            // complex multiply spelled out: finite operands only, and
            // std::complex operator* would otherwise call __muldc3
            const cdouble w = tw[j];
            const cdouble b = x[base + j + half];
            const cdouble t{w.real() * b.real() - w.imag() * b.imag(),
                            w.real() * b.imag() + w.imag() * b.real()};
            x[base + j + half] = x[base + j] - t;
            x[base + j] += t;
        }
    }
}

}  // namespace

const Ops scalar_ops = {
    sum_scalar,    norm_sq_scalar,   abs_sq_scalar,   reflect_scalar,
    scale_scalar,  haar_pair_scalar, fft_stage_scalar,
};

}  // namespace aqt::kernels
