#include "qimp/model.hpp"

#include "qimp/errors.hpp"

#include <cmath>
#include <string>

namespace qimp {

void SystemParams::validate() const {
    const double fields[] = {epsilon, delta, v, epsilon_I, beta.value(), gamma_minus, delta_p0};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            throw ParameterError("parameters must be finite");
        }
    }
    if (!(gamma_minus > 0.0)) {
        throw ParameterError("gamma_minus must be > 0, got " + std::to_string(gamma_minus));
    }
    if (!(epsilon_I > 0.0)) {
        throw ParameterError("epsilon_I must be > 0, got " + std::to_string(epsilon_I));
    }
    if (beta.value() < 0.0) {
        throw ParameterError("beta must be >= 0 (0 is infinite temperature)");
    }
    if (std::abs(delta_p0) > 1.0) {
        throw ParameterError("delta_p0 must lie in [-1, 1]");
    }
}

double SystemParams::omega() const noexcept { return std::hypot(epsilon, delta); }

double SystemParams::omega_tau(int tau) const {
    if (tau != 0 && tau != 1) {
        throw ParameterError("impurity index must be 0 or 1");
    }
    return std::hypot(epsilon + v * (1 - 2 * tau), delta);
}

double SystemParams::gamma_plus() const noexcept {
    if (beta.is_infinite_temperature()) {
        return gamma_minus;
    }
    return std::exp(-beta.value() * epsilon_I) * gamma_minus;
}

double SystemParams::gamma() const noexcept { return gamma_minus + gamma_plus(); }

double SystemParams::g() const noexcept { return 2.0 * v / gamma(); }

double SystemParams::delta_p_bar() const noexcept { return (gamma_minus - gamma_plus()) / gamma(); }

double SystemParams::conditioned_splitting_gap() const noexcept {
    const double o0 = omega_tau(0);
    const double o1 = omega_tau(1);
    if (o0 + o1 == 0.0) {
        return 0.0;
    }
    // Omega_0^2 - Omega_1^2 = 4 eps v; avoids cancellation in o0 - o1.
    return std::abs(4.0 * epsilon * v) / (o0 + o1);
}

ThermalRates thermal_rates(const SystemParams& p) {
    p.validate();
    return {p.gamma_minus, p.gamma_plus()};
}

namespace ops {
ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix lowering() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix raising() { return {{0.0, 0.0}, {1.0, 0.0}}; }
}  // namespace ops

ComplexMatrix build_hamiltonian(const SystemParams& p) {
    p.validate();
    using namespace ops;
    const ComplexMatrix id = identity2();
    return -0.5 * p.epsilon * kron(sigma_z(), id) - 0.5 * p.delta * kron(sigma_x(), id) -
           0.5 * p.v * kron(sigma_z(), sigma_z()) - 0.5 * p.epsilon_I * kron(id, sigma_z());
}

DensityMatrix4 initial_state(const SystemParams& p, cplx qubit_coherence0, double qubit_pop0) {
    p.validate();
    if (!std::isfinite(qubit_pop0) || qubit_pop0 < 0.0 || qubit_pop0 > 1.0) {
        throw ParameterError("qubit population must lie in [0, 1]");
    }
    if (!std::isfinite(qubit_coherence0.real()) || !std::isfinite(qubit_coherence0.imag())) {
        throw ParameterError("qubit coherence must be finite");
    }
    // 2x2 PSD <=> |c|^2 <= p (1 - p); small slack for values given in decimal.
    if (std::norm(qubit_coherence0) > qubit_pop0 * (1.0 - qubit_pop0) + 1e-14) {
        throw ParameterError("qubit block is not positive semidefinite: |coherence|^2 > pop (1 - pop)");
    }
    const ComplexMatrix rho_q{{qubit_pop0, qubit_coherence0}, {std::conj(qubit_coherence0), 1.0 - qubit_pop0}};
    const ComplexMatrix rho_i = ComplexMatrix::diagonal({0.5 * (1.0 + p.delta_p0), 0.5 * (1.0 - p.delta_p0)});
    return DensityMatrix4(kron(rho_q, rho_i));
}

}  // namespace qimp
