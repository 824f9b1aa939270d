// Closed-form qubit coherence multipliers Lambda(t), rho^Q_01(t) = Lambda(t) rho^Q_01(0),
// in the pure-dephasing limit Delta = 0.

#pragma once

#include "qimp/model.hpp"

#include <complex>
#include <string_view>

namespace qimp {

struct LocalSolutionParams {
    cplx A;
    cplx alpha;
    double g;
    double gamma;
    double delta_p_bar;
    double delta_p0;
    double epsilon;
};

/// alpha = sqrt(1 + 2i g dp_bar - g^2) (principal branch),
/// A = ((1 + alpha) + i g dp0) / (2 alpha). A is NaN-free only for alpha != 0;
/// lambda_local handles alpha -> 0 separately.
LocalSolutionParams local_solution_params(const SystemParams& p);

/// Lambda_L(t) = e^{i eps t} [A e^{-gamma(1-alpha)t/2} + (1-A) e^{-gamma(1+alpha)t/2}].
cplx lambda_local(double t, const SystemParams& p);

/// [cos(gamma d t/2) + sin(gamma d t/2)/d] e^{-gamma t/2}, d = sqrt(g^2 - 1).
/// Signed as written; its absolute value is |Lambda_L| for g > 1 at dp_bar = dp0 = 0.
/// Throws ParameterError for g <= 1.
double lambda_local_modulus_oscillatory(double t, double g, double gamma);

/// Population-weighted global multiplier
/// e^{i eps t} [p0 e^{ivt} e^{-gamma_plus t} + p1 e^{-ivt} e^{-gamma_minus t}],
/// p0,1 = (1 +- dp0)/2, so Lambda_G(0) = 1.
cplx lambda_global(double t, const SystemParams& p);

enum class CrossoverClass { Monotonic, Revivals, Boundary };

std::string_view to_string(CrossoverClass c) noexcept;

/// Monotonic for g < 1, Revivals for g > 1, Boundary for |g - 1| <= 1e-12.
CrossoverClass crossover_class(double g);

}  // namespace qimp
