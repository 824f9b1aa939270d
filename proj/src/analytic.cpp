#include "qimp/analytic.hpp"

#include "qimp/errors.hpp"

#include <cmath>

namespace qimp {

namespace {

constexpr cplx kI{0.0, 1.0};

// sinh(z)/z, with its Taylor series near the removable singularity.
cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-3) {
        const cplx z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
    }
    return std::sinh(z) / z;
}

}  // namespace

LocalSolutionParams local_solution_params(const SystemParams& p) {
    p.validate();
    LocalSolutionParams s{};
    s.g = p.g();
    s.gamma = p.gamma();
    s.delta_p_bar = p.delta_p_bar();
    s.delta_p0 = p.delta_p0;
    s.epsilon = p.epsilon;
    s.alpha = std::sqrt(cplx{1.0 - s.g * s.g, 2.0 * s.g * s.delta_p_bar});
    s.A = ((1.0 + s.alpha) + kI * s.g * s.delta_p0) / (2.0 * s.alpha);
    return s;
}

cplx lambda_local(double t, const SystemParams& p) {
    if (!(t >= 0.0)) {
        throw ParameterError("lambda_local: t must be >= 0");
    }
    const LocalSolutionParams s = local_solution_params(p);
    const cplx rotation = std::exp(kI * (s.epsilon * t));
    const double half_gt = 0.5 * s.gamma * t;
    if (std::abs(s.alpha) > 1e-3) {
        return rotation * (s.A * std::exp(-half_gt * (1.0 - s.alpha)) + (1.0 - s.A) * std::exp(-half_gt * (1.0 + s.alpha)));
    }
    // Same expression regrouped as cosh + (2A - 1) sinh, finite at alpha = 0.
    const cplx x = half_gt * s.alpha;
    const cplx numerator = 1.0 + kI * s.g * s.delta_p0;
    return rotation * std::exp(-half_gt) * (std::cosh(x) + numerator * half_gt * sinhc(x));
}

double lambda_local_modulus_oscillatory(double t, double g, double gamma) {
    if (!(g > 1.0)) {
        throw ParameterError("lambda_local_modulus_oscillatory requires g > 1");
    }
    const double d = std::sqrt(g * g - 1.0);
    const double phase = 0.5 * gamma * d * t;
    return (std::cos(phase) + std::sin(phase) / d) * std::exp(-0.5 * gamma * t);
}

cplx lambda_global(double t, const SystemParams& p) {
    if (!(t >= 0.0)) {
        throw ParameterError("lambda_global: t must be >= 0");
    }
    p.validate();
    const double p0 = 0.5 * (1.0 + p.delta_p0);
    const double p1 = 0.5 * (1.0 - p.delta_p0);
    const cplx up = std::exp(cplx{-p.gamma_plus() * t, p.v * t});
    const cplx down = std::exp(cplx{-p.gamma_minus * t, -p.v * t});
    return std::exp(kI * (p.epsilon * t)) * (p0 * up + p1 * down);
}

std::string_view to_string(CrossoverClass c) noexcept {
    switch (c) {
        case CrossoverClass::Monotonic: return "Monotonic";
        case CrossoverClass::Revivals: return "Revivals";
        case CrossoverClass::Boundary: return "Boundary";
    }
    return "Unknown";
}

CrossoverClass crossover_class(double g) {
    if (!(g >= 0.0)) {
        throw ParameterError("crossover_class: g must be >= 0");
    }
    if (std::abs(g - 1.0) <= 1e-12) {
        return CrossoverClass::Boundary;
    }
    return g < 1.0 ? CrossoverClass::Monotonic : CrossoverClass::Revivals;
}

}  // namespace qimp
