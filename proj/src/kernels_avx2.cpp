// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check (see kernels_dispatch.cpp).

#include "qimp/kernels.hpp"

#include <immintrin.h>

namespace qimp::kernels::avx2 {

namespace {

// One __m256d carries two interleaved complex numbers (re0, im0, re1, im1).

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (a_re + i a_im) * b for a broadcast scalar and two packed complex values.
inline __m256d mul_bcast(__m256d a_re, __m256d a_im, __m256d b) {
    const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

// Elementwise complex product of two packed pairs.
inline __m256d mul_packed(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0b1111);
    return mul_bcast(a_re, a_im, b);
}

inline cplx scalar_mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m * n; ++i) {
        c[i] = cplx{};
    }
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            const __m256d a_re = _mm256_set1_pd(aip.real());
            const __m256d a_im = _mm256_set1_pd(aip.imag());
            const cplx* brow = b + p * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                store2(crow + j, _mm256_add_pd(load2(crow + j), mul_bcast(a_re, a_im, load2(brow + j))));
            }
            if (j < n) {
                crow[j] += scalar_mul(aip, brow[j]);
            }
        }
    }
}

void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * n;
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j < n2; j += 2) {
            acc = _mm256_add_pd(acc, mul_packed(load2(arow + j), load2(x + j)));
        }
        const __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        alignas(16) double out[2];
        _mm_store_pd(out, sum);
        cplx yi{out[0], out[1]};
        if (j < n) {
            yi += scalar_mul(arow[j], x[j]);
        }
        y[i] = yi;
    }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t{1};
    const __m256d a_re = _mm256_set1_pd(alpha.real());
    const __m256d a_im = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        store2(y + i, _mm256_add_pd(load2(y + i), mul_bcast(a_re, a_im, load2(x + i))));
    }
    if (i < n) {
        y[i] += scalar_mul(alpha, x[i]);
    }
}

}  // namespace qimp::kernels::avx2
