// Small dense complex-matrix toolbox.
//
// Everything in the qubit-impurity model lives in a 4-dimensional Hilbert
// space, so superoperators are 16x16. Storage is row-major; the heavy
// products go through the runtime-selected kernels in kernels.hpp.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qimp {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of `entries` (row-major). Rejects non-finite entries.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    static ComplexMatrix diagonal(std::initializer_list<cplx> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// y = A x
std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conj(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double norm_1(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
/// Frobenius inner product <a, b> = tr(a^dagger b).
cplx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_deviation(const ComplexMatrix& a);

struct Eigensystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< orthonormal columns, vectors(:,k) <-> values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Eigenvalues come out ascending. Each eigenvector is phase-normalized so
/// its first non-negligible component is real positive; inside a degenerate
/// cluster vectors are ordered lexicographically by their components. Throws
/// std::invalid_argument when the input is not Hermitian to 1e-12 ||a||_F.
Eigensystem hermitian_eigensystem(const ComplexMatrix& a);

/// Matrix exponential (Pade-13 scaling and squaring).
ComplexMatrix expm(const ComplexMatrix& a);

/// Solves A X = B by LU with partial pivoting.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qimp
