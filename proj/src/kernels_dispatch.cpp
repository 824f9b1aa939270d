#include "qimp/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace qimp::kernels {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(QIMP_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(QIMP_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::gemm, &scalar::gemv, &scalar::axpy};
#if defined(QIMP_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::gemm, &avx2::gemv, &avx2::axpy};
#endif
#if defined(QIMP_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, &neon::gemm, &neon::gemv, &neon::axpy};
#endif

const KernelTable& select_best() noexcept {
    if (const char* env = std::getenv("QIMP_ISA"); env != nullptr && std::string_view{env} == "scalar") {
        return kScalar;
    }
    if (isa_available(Isa::Avx2)) {
        return kernels_for(Isa::Avx2);
    }
    if (isa_available(Isa::Neon)) {
        return kernels_for(Isa::Neon);
    }
    return kScalar;
}

}  // namespace

const KernelTable& kernels_for(Isa isa) noexcept {
    if (!isa_available(isa)) {
        return kScalar;
    }
    switch (isa) {
#if defined(QIMP_HAVE_AVX2)
        case Isa::Avx2: return kAvx2;
#endif
#if defined(QIMP_HAVE_NEON)
        case Isa::Neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select_best();
    return table;
}

}  // namespace qimp::kernels
