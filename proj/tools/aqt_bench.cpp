// Kernel and transform benchmarks, parameterized over the ISA so the
// scalar and AVX2 sets can be compared on the same host:
//
//   ./build/tools/aqt_bench --benchmark_filter=norm_sq

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "aqt/kernels.hpp"
#include "aqt/oracle.hpp"
#include "aqt/rng.hpp"
#include "aqt/statevector.hpp"

namespace {

using namespace aqt;
using kernels::Isa;

std::vector<cdouble> random_array(std::size_t n) {
    SplitMix64 rng(0xbe7c);
    std::vector<cdouble> out(n);
    for (auto& v : out) {
        v = {2.0 * uniform_double(rng) - 1.0, 2.0 * uniform_double(rng) - 1.0};
    }
    return out;
}

Isa isa_arg(const benchmark::State& state) {
    return state.range(1) == 0 ? Isa::Scalar : Isa::Avx2;
}

void args(benchmark::internal::Benchmark* bench) {
    for (const int64_t n : {1 << 10, 1 << 14, 1 << 18}) {
        bench->Args({n, 0});
        if (kernels::avx2_available()) {
            bench->Args({n, 1});
        }
    }
}

void bm_norm_sq(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto data = random_array(n);
    const auto& ops = kernels::ops(isa_arg(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ops.norm_sq(data.data(), n));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * sizeof(cdouble)));
}
BENCHMARK(bm_norm_sq)->Apply(args);

void bm_abs_sq(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto data = random_array(n);
    std::vector<double> out(n);
    const auto& ops = kernels::ops(isa_arg(state));
    for (auto _ : state) {
        ops.abs_sq(data.data(), out.data(), n);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * sizeof(cdouble)));
}
BENCHMARK(bm_abs_sq)->Apply(args);

void bm_reflect(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto data = random_array(n);
    const auto& ops = kernels::ops(isa_arg(state));
    for (auto _ : state) {
        ops.reflect(data.data(), cdouble{0.25, -0.5}, n);
        benchmark::DoNotOptimize(data.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * sizeof(cdouble)));
}
BENCHMARK(bm_reflect)->Apply(args);

void bm_haar_pair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto data = random_array(n);
    std::vector<cdouble> out(n);
    const auto& ops = kernels::ops(isa_arg(state));
    for (auto _ : state) {
        ops.haar_pair(data.data(), out.data(), n / 2);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * sizeof(cdouble)));
}
BENCHMARK(bm_haar_pair)->Apply(args);

void bm_fft_stage(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto data = random_array(n);
    const std::size_t len = n;  // widest stage dominates
    std::vector<cdouble> tw(len / 2);
    for (std::size_t k = 0; k < len / 2; ++k) {
        const double ang = -2.0 * 3.14159265358979323846 *
                           static_cast<double>(k) / static_cast<double>(len);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }
    const auto& ops = kernels::ops(isa_arg(state));
    for (auto _ : state) {
        ops.fft_stage(data.data(), tw.data(), n, len);
        benchmark::DoNotOptimize(data.data());
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * sizeof(cdouble)));
}
BENCHMARK(bm_fft_stage)->Apply(args);

// whole-pipeline shapes (dispatched kernel set)

void bm_qft(benchmark::State& state) {
    const auto n = state.range(0);
    StateVector base = StateVector::uniform(n);
    for (auto _ : state) {
        StateVector s = base;
        apply_qft(s);
        benchmark::DoNotOptimize(s.amps.data());
    }
}
BENCHMARK(bm_qft)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void bm_grover(benchmark::State& state) {
    const auto n = state.range(0);
    const CompositeOracle oracle{PeriodicSet(n, 208, 5, 7)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(grover_no_measure(oracle).amps.data());
    }
}
BENCHMARK(bm_grover)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
