#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the statevector transforms.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vectorized variant.  The active set is chosen once at startup
// from CPUID; tests run both sets against each other.  Arrays are
// interleaved re/im pairs (std::complex<double> is layout-compatible).

namespace aqt::kernels {

using cdouble = std::complex<double>;

struct Ops {
    // sum of all elements
    cdouble (*sum)(const cdouble* x, std::size_t n);
    // sum of |x_i|^2
    double (*norm_sq)(const cdouble* x, std::size_t n);
    // out_i = |x_i|^2
    void (*abs_sq)(const cdouble* x, double* out, std::size_t n);
    // x_i <- 2*m - x_i  (inversion about the mean)
    void (*reflect)(cdouble* x, cdouble m, std::size_t n);
    // x_i <- s * x_i
    void (*scale)(cdouble* x, double s, std::size_t n);
    // out_j       = (in_{2j} + in_{2j+1}) / sqrt(2)   for j < half
    // out_{half+j} = (in_{2j} - in_{2j+1}) / sqrt(2)
    void (*haar_pair)(const cdouble* in, cdouble* out, std::size_t half);
    // One radix-2 DIT butterfly stage of span `len` over the whole array:
    // for each block b and j < len/2,
    //   t            = tw_j * x[b+j+len/2]
    //   x[b+j+len/2] = x[b+j] - t
    //   x[b+j]       = x[b+j] + t
    void (*fft_stage)(cdouble* x, const cdouble* tw, std::size_t n,
                      std::size_t len);
};

enum class Isa { Scalar, Avx2 };

// Kernel set selected for the running CPU (AQT_FORCE_SCALAR=1 overrides).
const Ops& ops();
// Explicit set; used by the equivalence tests.
const Ops& ops(Isa isa);

Isa active_isa();
bool avx2_available();

extern const Ops scalar_ops;
#if defined(AQT_HAVE_AVX2)
extern const Ops avx2_ops;
#endif

}  // namespace aqt::kernels
