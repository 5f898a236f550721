// AVX2+FMA kernel variants.  Compiled only on x86-64 (see src/CMakeLists.txt);
// selection against the scalar set happens at runtime in kernels_dispatch.cpp.

#include "aqt/kernels.hpp"

#include <immintrin.h>

namespace aqt::kernels {

namespace {

inline const double* dp(const cdouble* p) {
    return reinterpret_cast<const double*>(p);
}
inline double* dp(cdouble* p) { return reinterpret_cast<double*>(p); }

cdouble sum_avx2(const cdouble* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(dp(x + i)));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double re = _mm_cvtsd_f64(s);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; i < n; ++i) {
        re += x[i].real();
        im += x[i].imag();
    }
    return {re, im};
}

double norm_sq_avx2(const cdouble* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(dp(x + i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
    double out = _mm_cvtsd_f64(s);
    for (; i < n; ++i) {
        out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return out;
}

void abs_sq_avx2(const cdouble* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(dp(x + i));
        const __m256d v1 = _mm256_loadu_pd(dp(x + i + 2));
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0),
                                         _mm256_mul_pd(v1, v1));
        // hadd interleaves the two sources per 128-bit lane; restore order
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
    }
    for (; i < n; ++i) {
        out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
}

void reflect_avx2(cdouble* x, cdouble m, std::size_t n) {
    const __m256d mm = _mm256_setr_pd(2.0 * m.real(), 2.0 * m.imag(),
                                      2.0 * m.real(), 2.0 * m.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(dp(x + i), _mm256_sub_pd(mm, _mm256_loadu_pd(dp(x + i))));
    }
    for (; i < n; ++i) {
        x[i] = {2.0 * m.real() - x[i].real(), 2.0 * m.imag() - x[i].imag()};
    }
}

void scale_avx2(cdouble* x, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(dp(x + i), _mm256_mul_pd(vs, _mm256_loadu_pd(dp(x + i))));
    }
    for (; i < n; ++i) {
        x[i] = {x[i].real() * s, x[i].imag() * s};
    }
}

void haar_pair_avx2(const cdouble* in, cdouble* out, std::size_t half) {
    const __m256d k = _mm256_set1_pd(0.7071067811865475244);
    std::size_t j = 0;
    for (; j + 2 <= half; j += 2) {
        const __m256d p0 = _mm256_loadu_pd(dp(in + 2 * j));      // pair j
        const __m256d p1 = _mm256_loadu_pd(dp(in + 2 * j + 2));  // pair j+1
        const __m256d even = _mm256_permute2f128_pd(p0, p1, 0x20);
        const __m256d odd = _mm256_permute2f128_pd(p0, p1, 0x31);
        _mm256_storeu_pd(dp(out + j),
                         _mm256_mul_pd(k, _mm256_add_pd(even, odd)));
        _mm256_storeu_pd(dp(out + half + j),
                         _mm256_mul_pd(k, _mm256_sub_pd(even, odd)));
    }
    const double inv_sqrt2 = 0.7071067811865475244;
    for (; j < half; ++j) {
        const cdouble a = in[2 * j];
        const cdouble b = in[2 * j + 1];
        out[j] = (a + b) * inv_sqrt2;
        out[half + j] = (a - b) * inv_sqrt2;
    }
}

void fft_stage_avx2(cdouble* x, const cdouble* tw, std::size_t n,
                    std::size_t len) {
    const std::size_t half = len / 2;
    if (half < 2) {
        // span-2 stage: unit twiddle, adjacent butterflies
        for (std::size_t base = 0; base < n; base += 2) {
            const cdouble t = x[base + 1];
            x[base + 1] = x[base] - t;
            x[base] += t;
        }
        return;
    }
    for (std::size_t base = 0; base < n; base += len) {
        for (std::size_t j = 0; j < half; j += 2) {
            const __m256d w = _mm256_loadu_pd(dp(tw + j));
            const __m256d wr = _mm256_movedup_pd(w);
            const __m256d wi = _mm256_permute_pd(w, 0xF);
            const __m256d hi = _mm256_loadu_pd(dp(x + base + j + half));
            const __m256d lo = _mm256_loadu_pd(dp(x + base + j));
            const __m256d hswap = _mm256_permute_pd(hi, 0x5);
            // t = w * hi  (complex multiply)
            const __m256d t = _mm256_fmaddsub_pd(wr, hi, _mm256_mul_pd(wi, hswap));
            _mm256_storeu_pd(dp(x + base + j + half), _mm256_sub_pd(lo, t));
            _mm256_storeu_pd(dp(x + base + j), _mm256_add_pd(lo, t));
        }
    }
}

}  // namespace

const Ops avx2_ops = {
    sum_avx2,   norm_sq_avx2,   abs_sq_avx2,    reflect_avx2,
    scale_avx2, haar_pair_avx2, fft_stage_avx2,
};

}  // namespace aqt::kernels
