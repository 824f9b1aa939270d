#include "qimp/kernels.hpp"

namespace qimp::kernels::scalar {

// Written on re/im parts directly: std::complex operator* carries the
// Annex G inf/nan recovery path, which we never need here.

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) {
        c[i] = cplx{};
    }
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                crow[j] = cplx{crow[j].real() + (ar * br - ai * bi),
                               crow[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

void gemv(const cplx* a, const cplx* x, cplx* y, std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        double re = 0.0;
        double im = 0.0;
        const cplx* arow = a + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            re += arow[j].real() * x[j].real() - arow[j].imag() * x[j].imag();
            im += arow[j].real() * x[j].imag() + arow[j].imag() * x[j].real();
        }
        y[i] = cplx{re, im};
    }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = cplx{y[i].real() + (ar * x[i].real() - ai * x[i].imag()),
                    y[i].imag() + (ar * x[i].imag() + ai * x[i].real())};
    }
}

}  // namespace qimp::kernels::scalar
