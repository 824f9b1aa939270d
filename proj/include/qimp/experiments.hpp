// Experiment orchestration shared by the CLI and the acceptance suite.

#pragma once

#include "qimp/analytic.hpp"
#include "qimp/dissipators.hpp"
#include "qimp/evolution.hpp"
#include "qimp/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qimp {

enum class Approach { Local, Global };

std::string_view to_string(Approach a) noexcept;

/// eps = 20, Delta = 0, eps_I = 20, infinite temperature, dp0 = 0, coupling v,
/// and gamma_minus chosen so that 2v / gamma = g.
SystemParams reference_params(double g, double v = 2.0);

/// Sets gamma_minus so that p.g() == g at p's temperature. Requires v > 0.
SystemParams with_crossover_parameter(SystemParams p, double g);

std::vector<double> linspace(double a, double b, std::size_t n);

std::vector<JumpOperator> jump_operators(Approach a, const SystemParams& p,
                                         std::vector<std::string>* warnings = nullptr);

/// Lambda_L or Lambda_G; only meaningful at Delta = 0.
cplx analytic_lambda(Approach a, double t, const SystemParams& p);

struct QubitPreparation {
    cplx coherence = 0.5;
    double population = 0.5;
};

Trajectory simulate(const SystemParams& p, Approach a, std::span<const double> times,
                    Integrator integrator = Integrator::Exponential, QubitPreparation prep = {},
                    std::vector<std::string>* warnings = nullptr);

/// Index of the first sample strictly below its left neighbour and not above
/// its right neighbour, if any.
std::optional<std::size_t> first_interior_minimum(std::span<const double> values);

/// -slope of a least-squares line through ln(values) for t <= t_window.
std::optional<double> fitted_initial_decay_rate(std::span<const double> times, std::span<const double> values,
                                                double t_window);

}  // namespace qimp
