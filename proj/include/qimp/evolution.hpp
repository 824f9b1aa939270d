// GKSL generators in Liouville space, their propagators, time evolution and
// complete-positivity checks.
//
// Vectorization is column stacking (see state.hpp), so
//   vec(A rho B) = (B^T (x) A) vec(rho)
// and the generator of  d rho/dt = -i[H, rho] + sum_k g_k D[L_k] rho  with
// D[L] rho = L rho L^dag - {L^dag L, rho}/2  is
//   -i(I (x) H - H^T (x) I) + sum_k g_k (conj(L_k) (x) L_k
//                                       - I (x) L_k^dag L_k / 2 - (L_k^dag L_k)^T (x) I / 2).

#pragma once

#include "qimp/densemath.hpp"
#include "qimp/dissipators.hpp"
#include "qimp/state.hpp"

#include <array>
#include <span>
#include <vector>

namespace qimp {

enum class SuperKind { Generator, Propagator };

struct Superoperator {
    ComplexMatrix matrix;  ///< 16x16
    SuperKind kind = SuperKind::Generator;
};

Superoperator build_liouvillian(const ComplexMatrix& hamiltonian, std::span<const JumpOperator> jumps);

/// exp(t * gen). Throws ParameterError for t < 0 or a non-generator input.
Superoperator propagate(const Superoperator& gen, double t);

/// Applies a superoperator matrix to rho (in matrix form).
ComplexMatrix apply_superoperator(const Superoperator& s, const ComplexMatrix& rho);

/// Direct matrix-form right-hand side -i[H, rho] + sum_k g_k D[L_k] rho.
ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, std::span<const JumpOperator> jumps,
                           const ComplexMatrix& rho);

enum class Integrator {
    Exponential,  ///< matrix-exponential propagator (default)
    RungeKutta,   ///< adaptive Dormand-Prince 5(4), cross-check only
};

struct RungeKuttaOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 5'000'000;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix4> states;
    std::vector<cplx> coherence;                           ///< rho^Q_01(t)
    std::vector<std::array<double, 2>> qubit_populations;  ///< rho^Q_00, rho^Q_11
    std::vector<std::array<double, 2>> impurity_populations;
    std::vector<StateDiagnostics> diagnostics;
};

/// Evolves rho0 over a strictly increasing grid of times >= 0. Throws
/// InvariantViolation (with time and offending value) if a state leaves the
/// density-matrix set beyond 1e-10.
Trajectory evolve(const DensityMatrix4& rho0, const Superoperator& gen, std::span<const double> times,
                  Integrator integrator = Integrator::Exponential, const RungeKuttaOptions& rk = {});

/// Choi matrix C = sum_ij |i><j| (x) Phi(|i><j|) of a propagator.
ComplexMatrix choi_matrix(const Superoperator& prop);

struct CpReport {
    bool completely_positive = false;
    double min_eigenvalue = 0.0;
    bool trace_preserving = false;
    double trace_preservation_deviation = 0.0;  ///< ||Tr_out C - I||_F
};

CpReport is_completely_positive(const Superoperator& prop, double tol = 1e-10);

}  // namespace qimp
