// Physical parameters of the qubit-impurity system and the objects built
// directly from them: Hamiltonian, thermal rates, initial states.
//
//   H = -(eps/2) sz - (Delta/2) sx - (v/2) sz tz - (eps_I/2) tz    (hbar = k_B = 1)
//
// The bath enters only through the emission rate gamma_minus; absorption
// follows from detailed balance at inverse temperature beta.

#pragma once

#include "qimp/densemath.hpp"
#include "qimp/state.hpp"

namespace qimp {

/// Inverse temperature. beta = 0 is the infinite-temperature point and is
/// treated exactly (gamma_plus == gamma_minus bit for bit).
class InverseTemperature {
public:
    constexpr InverseTemperature() = default;
    constexpr explicit InverseTemperature(double beta) : beta_(beta) {}

    static constexpr InverseTemperature infinite_temperature() { return InverseTemperature{0.0}; }

    constexpr double value() const noexcept { return beta_; }
    constexpr bool is_infinite_temperature() const noexcept { return beta_ == 0.0; }

    friend constexpr bool operator==(InverseTemperature, InverseTemperature) = default;

private:
    double beta_ = 0.0;
};

struct SystemParams {
    double epsilon = 0.0;      ///< qubit bias
    double delta = 0.0;        ///< qubit tunneling
    double v = 0.0;            ///< qubit-impurity z-z coupling
    double epsilon_I = 1.0;    ///< impurity splitting
    InverseTemperature beta{};
    double gamma_minus = 1.0;  ///< impurity emission rate
    double delta_p0 = 0.0;     ///< initial impurity imbalance rho^I_00(0) - rho^I_11(0)

    /// Throws ParameterError on gamma_minus <= 0, epsilon_I <= 0, beta < 0,
    /// |delta_p0| > 1 or any non-finite field.
    void validate() const;

    double omega() const noexcept;              ///< sqrt(eps^2 + Delta^2)
    double omega_tau(int tau) const;            ///< sqrt((eps + v(1-2tau))^2 + Delta^2)
    double gamma_plus() const noexcept;         ///< exp(-beta eps_I) gamma_minus
    double gamma() const noexcept;              ///< gamma_minus + gamma_plus
    double g() const noexcept;                  ///< 2v / gamma
    double delta_p_bar() const noexcept;        ///< (gamma_minus - gamma_plus) / gamma
    /// |Omega_0 - Omega_1|, evaluated as |Omega_0^2 - Omega_1^2| / (Omega_0 + Omega_1).
    double conditioned_splitting_gap() const noexcept;
};

struct ThermalRates {
    double minus;  ///< emission
    double plus;   ///< absorption
};

ThermalRates thermal_rates(const SystemParams& p);

namespace ops {
ComplexMatrix identity2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix lowering();  ///< |0><1|
ComplexMatrix raising();   ///< |1><0|
}  // namespace ops

ComplexMatrix build_hamiltonian(const SystemParams& p);

/// rho^Q(0) (x) diag((1+dp0)/2, (1-dp0)/2) with
/// rho^Q(0) = [[pop0, coherence0], [conj(coherence0), 1 - pop0]].
DensityMatrix4 initial_state(const SystemParams& p, cplx qubit_coherence0, double qubit_pop0);

}  // namespace qimp
