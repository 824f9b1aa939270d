#include "qimp/densemath.hpp"

#include "qimp/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace qimp {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + ")");
    }
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square");
    }
}

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
    }
    if (!std::all_of(data_.begin(), data_.end(), is_finite)) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!std::all_of(data_.begin(), data_.end(), is_finite)) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (!is_finite(diag[i])) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> diag) {
    return diagonal(std::span<const cplx>(diag.begin(), diag.size()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += o.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("operator*: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    kernels::active().gemm(a.data().data(), b.data().data(), c.data().data(), a.rows(), a.cols(), b.cols());
    return c;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) {
        throw DimensionError("matvec: vector length does not match matrix columns");
    }
    std::vector<cplx> y(a.rows());
    kernels::active().gemv(a.data().data(), x.data(), y.data(), a.rows(), a.cols());
    return y;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

ComplexMatrix conj(const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (auto& z : out.data()) {
        z = std::conj(z);
    }
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

cplx trace(const ComplexMatrix& a) {
    require_square(a, "trace");
    cplx t{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double norm_1(const ComplexMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            col += std::abs(a(i, j));
        }
        best = std::max(best, col);
    }
    return best;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

cplx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_inner");
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a.data()[i]) * b.data()[i];
    }
    return s;
}

double hermiticity_deviation(const ComplexMatrix& a) {
    require_square(a, "hermiticity_deviation");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Hermitian eigensystem

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). A <- G^dagger A G, V <- V G.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const cplx phase = apq / r;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    double t = 0.0;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // G = D P with D = diag(1, conj(phase)) on (p,q) and P the real rotation.
    const cplx gpp = c;
    const cplx gpq = s;
    const cplx gqp = -s * std::conj(phase);
    const cplx gqq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

std::vector<cplx> phase_normalized_column(const ComplexMatrix& v, std::size_t col) {
    std::vector<cplx> x(v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        x[i] = v(i, col);
    }
    for (const cplx& z : x) {
        if (std::abs(z) > 1e-12) {
            const cplx rot = std::conj(z) / std::abs(z);
            for (auto& w : x) {
                w *= rot;
            }
            break;
        }
    }
    return x;
}

bool lexicographic_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) {
            return a[i].real() < b[i].real();
        }
        if (a[i].imag() != b[i].imag()) {
            return a[i].imag() < b[i].imag();
        }
    }
    return false;
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& input) {
    require_square(input, "hermitian_eigensystem");
    const double scale = frobenius_norm(input);
    if (hermiticity_deviation(input) > 1e-12 * scale) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
    }
    const std::size_t n = input.rows();
    ComplexMatrix a = 0.5 * (input + dagger(input));
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off == 0.0 || off <= 1e-17 * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }

    struct Pair {
        double value;
        std::vector<cplx> vec;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs.push_back({a(k, k).real(), phase_normalized_column(v, k)});
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.value < y.value; });

    // Within degenerate clusters order deterministically by vector components.
    const double cluster_tol = 1e-12 * std::max(scale, 1e-300);
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && pairs[end].value - pairs[end - 1].value <= cluster_tol) {
            ++end;
        }
        std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                         pairs.begin() + static_cast<std::ptrdiff_t>(end),
                         [](const Pair& x, const Pair& y) { return lexicographic_less(x.vec, y.vec); });
        begin = end;
    }

    Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = pairs[k].value;
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = pairs[k].vec[i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear solve and matrix exponential

ComplexMatrix solve(const ComplexMatrix& a_in, const ComplexMatrix& b_in) {
    require_square(a_in, "solve");
    if (a_in.rows() != b_in.rows()) {
        throw DimensionError("solve: right-hand side rows differ from matrix order");
    }
    const std::size_t n = a_in.rows();
    const std::size_t m = b_in.cols();
    ComplexMatrix a = a_in;
    ComplexMatrix b = b_in;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) {
                piv = r;
            }
        }
        if (a(piv, col) == cplx{}) {
            throw std::runtime_error("solve: singular matrix");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
            }
            for (std::size_t j = 0; j < m; ++j) {
                std::swap(b(piv, j), b(col, j));
            }
        }
        const cplx inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) * inv;
            if (f == cplx{}) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a(r, j) -= f * a(col, j);
            }
            for (std::size_t j = 0; j < m; ++j) {
                b(r, j) -= f * b(col, j);
            }
        }
    }
    for (std::size_t jj = 0; jj < m; ++jj) {
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = b(ii, jj);
            for (std::size_t k = ii + 1; k < n; ++k) {
                s -= a(ii, k) * b(k, jj);
            }
            b(ii, jj) = s / a(ii, ii);
        }
    }
    return b;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    require_square(a, "expm");
    const std::size_t n = a.rows();
    if (n == 0) {
        return a;
    }

    // Higham (2005) degree-13 Pade coefficients and scaling threshold.
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm = norm_1(a);
    int squarings = 0;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    }
    const ComplexMatrix as = a * cplx{std::ldexp(1.0, -squarings)};
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix a2 = as * as;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                                  b[3] * a2 + b[1] * ident;
    const ComplexMatrix u = as * u_inner;
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                            b[2] * a2 + b[0] * ident;

    ComplexMatrix r = solve(v - u, v + u);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    return r;
}

}  // namespace qimp
