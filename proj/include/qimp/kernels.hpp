// Complex dense kernels: a scalar reference plus SIMD variants.
//
// All buffers hold interleaved (re, im) doubles via std::complex<double>,
// row-major. The SIMD variants must agree with the scalar reference to
// rounding (FMA contraction is the only permitted difference).

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qimp::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// C(m x n) = A(m x k) * B(k x n). C must not alias A or B.
using GemmFn = void (*)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
                        std::size_t n);
/// y(m) = A(m x n) * x(n). y must not alias A or x.
using GemvFn = void (*)(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n);
/// y += alpha * x
using AxpyFn = void (*)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

struct KernelTable {
    Isa isa;
    GemmFn gemm;
    GemvFn gemv;
    AxpyFn axpy;
};

namespace scalar {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#if defined(QIMP_HAVE_AVX2)
namespace avx2 {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(QIMP_HAVE_NEON)
namespace neon {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace neon
#endif

/// True if the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Kernel table for a specific ISA; falls back to scalar if unavailable.
const KernelTable& kernels_for(Isa isa) noexcept;

/// Best available table, chosen once per process. Setting the environment
/// variable QIMP_ISA=scalar forces the reference path.
const KernelTable& active() noexcept;

}  // namespace qimp::kernels
