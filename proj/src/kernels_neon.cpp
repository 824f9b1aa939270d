// AArch64 NEON variants: one float64x2_t per complex number.

#include "qimp/kernels.hpp"

#include <arm_neon.h>

namespace qimp::kernels::neon {

namespace {

inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

// acc + a * b, where a = (ar, ai) is split into broadcast parts.
inline float64x2_t fma_cplx(float64x2_t acc, float64x2_t a_re, float64x2_t a_im_signed, float64x2_t b) {
    const float64x2_t b_swap = vextq_f64(b, b, 1);
    acc = vfmaq_f64(acc, a_re, b);
    return vfmaq_f64(acc, a_im_signed, b_swap);
}

inline float64x2_t signed_imag(double ai) {
    const double lanes[2] = {-ai, ai};
    return vld1q_f64(lanes);
}

}  // namespace

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) {
        c[i] = cplx{};
    }
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            const float64x2_t a_re = vdupq_n_f64(aip.real());
            const float64x2_t a_im = signed_imag(aip.imag());
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                store1(crow + j, fma_cplx(load1(crow + j), a_re, a_im, load1(brow + j)));
            }
        }
    }
}

void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * n;
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < n; ++j) {
            acc = fma_cplx(acc, vdupq_n_f64(arow[j].real()), signed_imag(arow[j].imag()), load1(x + j));
        }
        store1(y + i, acc);
    }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const float64x2_t a_re = vdupq_n_f64(alpha.real());
    const float64x2_t a_im = signed_imag(alpha.imag());
    for (std::size_t i = 0; i < n; ++i) {
        store1(y + i, fma_cplx(load1(y + i), a_re, a_im, load1(x + i)));
    }
}

}  // namespace qimp::kernels::neon
