// Jump operators for the local and global GKSL descriptions, and a generic
// full-secular decomposition used to cross-check the closed forms.

#pragma once

#include "qimp/densemath.hpp"
#include "qimp/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qimp {

enum class JumpLabel {
    LocalEmission,
    LocalAbsorption,
    GlobalDecay1,
    GlobalDecay2,
    GlobalAbsorb1,
    GlobalAbsorb2,
    DerivedSecular,
};

std::string_view to_string(JumpLabel label) noexcept;

/// A GKSL jump operator with its rate. Global and derived operators carry
/// the Bohr frequency w of the eigenoperator relation [H, L] = -w L.
class JumpOperator {
public:
    /// Throws ParameterError if rate <= 0, the matrix is not 4x4 and finite,
    /// or a Global*/DerivedSecular operator lacks a Bohr frequency.
    JumpOperator(ComplexMatrix matrix, double rate, JumpLabel label,
                 std::optional<double> bohr_frequency = std::nullopt);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    double rate() const noexcept { return rate_; }
    JumpLabel label() const noexcept { return label_; }
    const std::optional<double>& bohr_frequency() const noexcept { return bohr_frequency_; }

private:
    ComplexMatrix matrix_;
    double rate_;
    JumpLabel label_;
    std::optional<double> bohr_frequency_;
};

/// I (x) tau_-, rate gamma_minus, and I (x) tau_+, rate gamma_plus.
/// The absorption operator is omitted if gamma_plus underflows to zero.
std::vector<JumpOperator> local_jump_operators(const SystemParams& p);

struct MixingAngles {
    double theta0;
    double theta1;
    double c;  ///< cos((theta0 - theta1) / 2)
};

/// theta_tau = atan2(Delta, eps + v(1 - 2tau)). Throws DegenerateAngle when
/// both arguments vanish for some tau.
MixingAngles mixing_angles(const SystemParams& p);

/// Eigenstates |+-_tau> of the impurity-conditioned qubit Hamiltonian
/// -(eps + v(1-2tau))/2 sz - Delta/2 sx, as 2-vectors. |+> is the lower
/// level (cos(theta/2), sin(theta/2)); each vector has its largest-magnitude
/// component made real positive.
struct ConditionedQubitBasis {
    std::vector<cplx> plus;
    std::vector<cplx> minus;
    double energy_plus;   ///< -Omega_tau/2
    double energy_minus;  ///< +Omega_tau/2
};
ConditionedQubitBasis conditioned_qubit_basis(const SystemParams& p, int tau);

/// Closed-form global operators: c|+_0,0><+_1,1| and c|-_0,0><-_1,1| with rate
/// gamma_minus, plus their adjoints with rate gamma_plus. If `warnings` is
/// given, a message is appended when |Omega_0 - Omega_1| <= gamma.
std::vector<JumpOperator> global_jump_operators(const SystemParams& p,
                                                std::vector<std::string>* warnings = nullptr);

using RateMap = std::function<double(double bohr_frequency)>;

/// gamma_minus for w > 0, gamma_plus for w < 0, 0 otherwise.
RateMap detailed_balance_rate_map(const SystemParams& p);

/// 1e-9 * max(|eps| + |Delta| + |v| + |eps_I|, 1).
double default_bohr_tolerance(const SystemParams& p);

/// Full-secular decomposition A = sum_w A(w), A(w) = sum_{E'-E=w} P(E) A P(E').
///
/// Energies and Bohr frequencies are clustered with tolerance tol_bohr
/// (single linkage on sorted values). Throws AmbiguousClustering if two
/// neighbouring values are more than tol_bohr but at most 10*tol_bohr apart.
/// Components with ||A(w)||_F < 1e-12 or a non-positive mapped rate are
/// dropped. Output is ordered by descending Bohr frequency.
std::vector<JumpOperator> secular_decompose(const ComplexMatrix& hamiltonian, const ComplexMatrix& coupling,
                                            const RateMap& rate_map, double tol_bohr);

/// min over phases phi of ||a - e^{i phi} b||_F.
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||[H, L] + w L||_F for an operator with a Bohr frequency.
double eigenoperator_residual(const ComplexMatrix& hamiltonian, const JumpOperator& op);

}  // namespace qimp
