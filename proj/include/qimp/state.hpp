// Two-qubit (qubit x impurity) density matrices.
//
// Basis convention, shared by every module: product basis |q>|i> ordered
// |00>, |01>, |10>, |11> (qubit index is the slow one), with
// sigma_z|0> = +|0> and tau_z|0> = +|0>.

#pragma once

#include "qimp/densemath.hpp"

namespace qimp {

inline constexpr std::size_t kDim = 4;
inline constexpr std::size_t kLiouvilleDim = kDim * kDim;
inline constexpr double kStateTolerance = 1e-10;

struct StateDiagnostics {
    double hermiticity = 0.0;   ///< ||rho - rho^dagger||_F
    double trace_deviation = 0.0;  ///< |tr rho - 1|
    double min_eigenvalue = 0.0;
};

StateDiagnostics diagnose_state(const ComplexMatrix& rho);

/// 4x4 Hermitian, unit-trace, positive semidefinite matrix (to 1e-10).
class DensityMatrix4 {
public:
    /// Throws ParameterError if any invariant fails beyond tolerance.
    explicit DensityMatrix4(ComplexMatrix rho);

    const ComplexMatrix& matrix() const noexcept { return rho_; }
    cplx operator()(std::size_t r, std::size_t c) const noexcept { return rho_(r, c); }

    static DensityMatrix4 maximally_mixed();

private:
    ComplexMatrix rho_;
};

ComplexMatrix partial_trace_impurity(const ComplexMatrix& rho);  ///< rho^Q = Tr_I rho
ComplexMatrix partial_trace_qubit(const ComplexMatrix& rho);     ///< rho^I = Tr_Q rho
ComplexMatrix partial_trace_impurity(const DensityMatrix4& rho);
ComplexMatrix partial_trace_qubit(const DensityMatrix4& rho);

/// rho^Q_01, the qubit coherence.
cplx qubit_coherence(const DensityMatrix4& rho);
cplx qubit_coherence(const ComplexMatrix& rho);

/// Column-stacking vectorization: vec(rho)[i + n*j] = rho(i, j).
std::vector<cplx> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(std::span<const cplx> v, std::size_t n);

}  // namespace qimp
