#include "aqt/kernels.hpp"

#include <cstdlib>

namespace aqt::kernels {

bool avx2_available() {
#if defined(AQT_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa select_isa() {
    const char* force = std::getenv("AQT_FORCE_SCALAR");
    if (force != nullptr && force[0] != '\0' && force[0] != '0') {
        return Isa::Scalar;
    }
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

const Ops& ops(Isa isa) {
#if defined(AQT_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        return avx2_ops;
    }
#else
    (void)isa;
#endif
    return scalar_ops;
}

const Ops& ops() { return ops(active_isa()); }

}  // namespace aqt::kernels
