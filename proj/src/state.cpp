#include "qimp/state.hpp"

#include "qimp/errors.hpp"

#include <cmath>
#include <sstream>

namespace qimp {

StateDiagnostics diagnose_state(const ComplexMatrix& rho) {
    if (rho.rows() != kDim || rho.cols() != kDim) {
        throw DimensionError("density matrix must be 4x4");
    }
    StateDiagnostics d;
    d.hermiticity = hermiticity_deviation(rho);
    d.trace_deviation = std::abs(trace(rho) - 1.0);
    const ComplexMatrix herm = 0.5 * (rho + dagger(rho));
    d.min_eigenvalue = hermitian_eigensystem(herm).values.front();
    return d;
}

DensityMatrix4::DensityMatrix4(ComplexMatrix rho) : rho_(std::move(rho)) {
    const StateDiagnostics d = diagnose_state(rho_);
    if (d.hermiticity > kStateTolerance || d.trace_deviation > kStateTolerance ||
        d.min_eigenvalue < -kStateTolerance) {
        std::ostringstream os;
        os << "not a density matrix: hermiticity " << d.hermiticity << ", trace deviation "
           << d.trace_deviation << ", min eigenvalue " << d.min_eigenvalue;
        throw ParameterError(os.str());
    }
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
    return DensityMatrix4(0.25 * ComplexMatrix::identity(kDim));
}

ComplexMatrix partial_trace_impurity(const ComplexMatrix& rho) {
    ComplexMatrix out(2, 2);
    for (std::size_t q = 0; q < 2; ++q) {
        for (std::size_t qp = 0; qp < 2; ++qp) {
            out(q, qp) = rho(2 * q, 2 * qp) + rho(2 * q + 1, 2 * qp + 1);
        }
    }
    return out;
}

ComplexMatrix partial_trace_qubit(const ComplexMatrix& rho) {
    ComplexMatrix out(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t ip = 0; ip < 2; ++ip) {
            out(i, ip) = rho(i, ip) + rho(2 + i, 2 + ip);
        }
    }
    return out;
}

ComplexMatrix partial_trace_impurity(const DensityMatrix4& rho) { return partial_trace_impurity(rho.matrix()); }
ComplexMatrix partial_trace_qubit(const DensityMatrix4& rho) { return partial_trace_qubit(rho.matrix()); }

cplx qubit_coherence(const ComplexMatrix& rho) { return rho(0, 2) + rho(1, 3); }
cplx qubit_coherence(const DensityMatrix4& rho) { return qubit_coherence(rho.matrix()); }

std::vector<cplx> vectorize(const ComplexMatrix& rho) {
    const std::size_t n = rho.rows();
    std::vector<cplx> v(n * rho.cols());
    for (std::size_t j = 0; j < rho.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            v[i + n * j] = rho(i, j);
        }
    }
    return v;
}

ComplexMatrix unvectorize(std::span<const cplx> v, std::size_t n) {
    if (v.size() != n * n) {
        throw DimensionError("unvectorize: length is not n*n");
    }
    ComplexMatrix rho(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            rho(i, j) = v[i + n * j];
        }
    }
    return rho;
}

}  // namespace qimp
