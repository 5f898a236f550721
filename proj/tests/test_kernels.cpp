#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "aqt/kernels.hpp"
#include "aqt/rng.hpp"

using namespace aqt;
using kernels::cdouble;

namespace {

std::vector<cdouble> random_array(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<cdouble> out(n);
    for (auto& v : out) {
        v = {2.0 * uniform_double(rng) - 1.0, 2.0 * uniform_double(rng) - 1.0};
    }
    return out;
}

}  // namespace

TEST_CASE("scalar and vector kernel sets agree", "[kernels]") {
    if (!kernels::avx2_available()) {
        SUCCEED("no AVX2 on this host; scalar set is the only variant");
        return;
    }
    const auto& scalar = kernels::ops(kernels::Isa::Scalar);
    const auto& vec = kernels::ops(kernels::Isa::Avx2);

    // odd lengths exercise the tail paths
    for (const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                                std::size_t{5}, std::size_t{8}, std::size_t{64},
                                std::size_t{257}, std::size_t{1024}}) {
        const auto base = random_array(n, 0xabc0 + n);

        SECTION("sum n=" + std::to_string(n)) {
            const cdouble a = scalar.sum(base.data(), n);
            const cdouble b = vec.sum(base.data(), n);
            REQUIRE(std::abs(a - b) < 1e-12 * static_cast<double>(n + 1));
        }
        SECTION("norm_sq n=" + std::to_string(n)) {
            REQUIRE(scalar.norm_sq(base.data(), n) ==
                    Catch::Approx(vec.norm_sq(base.data(), n)).margin(1e-12));
        }
        SECTION("abs_sq n=" + std::to_string(n)) {
            std::vector<double> a(n), b(n);
            scalar.abs_sq(base.data(), a.data(), n);
            vec.abs_sq(base.data(), b.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(a[i] == Catch::Approx(b[i]).margin(1e-15));
            }
        }
        SECTION("reflect n=" + std::to_string(n)) {
            auto a = base;
            auto b = base;
            const cdouble m{0.25, -0.75};
            scalar.reflect(a.data(), m, n);
            vec.reflect(b.data(), m, n);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(std::abs(a[i] - b[i]) < 1e-15);
            }
        }
        SECTION("scale n=" + std::to_string(n)) {
            auto a = base;
            auto b = base;
            scalar.scale(a.data(), 0.3125, n);
            vec.scale(b.data(), 0.3125, n);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(std::abs(a[i] - b[i]) < 1e-15);
            }
        }
    }
}

TEST_CASE("haar pair kernel equivalence and orthogonality", "[kernels]") {
    const auto& scalar = kernels::ops(kernels::Isa::Scalar);
    for (const std::size_t half : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                                   std::size_t{7}, std::size_t{128}}) {
        const auto in = random_array(2 * half, 0x11d + half);
        std::vector<cdouble> a(2 * half);
        scalar.haar_pair(in.data(), a.data(), half);

        // norm preserved (rows orthonormal)
        REQUIRE(scalar.norm_sq(a.data(), 2 * half) ==
                Catch::Approx(scalar.norm_sq(in.data(), 2 * half)).margin(1e-12));

        if (kernels::avx2_available()) {
            std::vector<cdouble> b(2 * half);
            kernels::ops(kernels::Isa::Avx2).haar_pair(in.data(), b.data(), half);
            for (std::size_t i = 0; i < 2 * half; ++i) {
                REQUIRE(std::abs(a[i] - b[i]) < 1e-15);
            }
        }
    }
}

TEST_CASE("fft stage kernel equivalence", "[kernels]") {
    if (!kernels::avx2_available()) {
        return;
    }
    const std::size_t n = 64;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::vector<cdouble> tw(len / 2);
        for (std::size_t k = 0; k < len / 2; ++k) {
            const double ang = -2.0 * 3.14159265358979323846 *
                               static_cast<double>(k) / static_cast<double>(len);
            tw[k] = {std::cos(ang), std::sin(ang)};
        }
        auto a = random_array(n, 0xfade + len);
        auto b = a;
        kernels::ops(kernels::Isa::Scalar).fft_stage(a.data(), tw.data(), n, len);
        kernels::ops(kernels::Isa::Avx2).fft_stage(b.data(), tw.data(), n, len);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(std::abs(a[i] - b[i]) < 1e-13);
        }
    }
}

TEST_CASE("dispatch selects a working set", "[kernels]") {
    const auto& k = kernels::ops();
    std::vector<cdouble> ones(10, cdouble{1.0, 0.0});
    REQUIRE(std::abs(k.sum(ones.data(), 10) - cdouble{10.0, 0.0}) < 1e-12);
    REQUIRE(k.norm_sq(ones.data(), 10) == Catch::Approx(10.0));
}
