#include "qimp/experiments.hpp"

#include "qimp/errors.hpp"

#include <cmath>

namespace qimp {

std::string_view to_string(Approach a) noexcept {
    return a == Approach::Local ? "local" : "global";
}

SystemParams reference_params(double g, double v) {
    SystemParams p;
    p.epsilon = 20.0;
    p.delta = 0.0;
    p.epsilon_I = 20.0;
    p.v = v;
    p.beta = InverseTemperature::infinite_temperature();
    p.delta_p0 = 0.0;
    return with_crossover_parameter(p, g);
}

SystemParams with_crossover_parameter(SystemParams p, double g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw ParameterError("g must be finite and > 0");
    }
    if (!(p.v > 0.0)) {
        throw ParameterError("setting g requires v > 0");
    }
    // gamma = gamma_minus (1 + e^{-beta eps_I}) = 2v / g
    const double ratio = p.beta.is_infinite_temperature() ? 1.0 : std::exp(-p.beta.value() * p.epsilon_I);
    p.gamma_minus = 2.0 * p.v / (g * (1.0 + ratio));
    return p;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) {
        out.back() = b;
    }
    return out;
}

std::vector<JumpOperator> jump_operators(Approach a, const SystemParams& p, std::vector<std::string>* warnings) {
    return a == Approach::Local ? local_jump_operators(p) : global_jump_operators(p, warnings);
}

cplx analytic_lambda(Approach a, double t, const SystemParams& p) {
    return a == Approach::Local ? lambda_local(t, p) : lambda_global(t, p);
}

Trajectory simulate(const SystemParams& p, Approach a, std::span<const double> times, Integrator integrator,
                    QubitPreparation prep, std::vector<std::string>* warnings) {
    const DensityMatrix4 rho0 = initial_state(p, prep.coherence, prep.population);
    const Superoperator gen = build_liouvillian(build_hamiltonian(p), jump_operators(a, p, warnings));
    return evolve(rho0, gen, times, integrator);
}

std::optional<std::size_t> first_interior_minimum(std::span<const double> values) {
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<double> fitted_initial_decay_rate(std::span<const double> times, std::span<const double> values,
                                                double t_window) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < times.size() && times[i] <= t_window; ++i) {
        if (!(values[i] > 0.0)) {
            break;
        }
        const double x = times[i];
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) {
        return std::nullopt;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) {
        return std::nullopt;
    }
    return -(dn * sxy - sx * sy) / denom;
}

}  // namespace qimp
