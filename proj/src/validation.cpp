#include "qimp/validation.hpp"

#include "qimp/analytic.hpp"
#include "qimp/dissipators.hpp"
#include "qimp/evolution.hpp"
#include "qimp/experiments.hpp"
#include "qimp/regimes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace qimp {
namespace {

constexpr double kReferenceG[] = {0.5, 2.0, 6.0};
constexpr std::size_t kGridPoints = 200;

double tol_or(const ValidationOptions& o, double fallback) {
    return o.tolerance_override.value_or(fallback);
}

std::vector<double> unit_grid(const SystemParams& p, std::size_t n = kGridPoints) {
    return linspace(0.0, 10.0 / p.gamma(), n);
}

std::vector<double> modulus(const std::vector<cplx>& z) {
    std::vector<double> out(z.size());
    std::transform(z.begin(), z.end(), out.begin(), [](cplx c) { return std::abs(c); });
    return out;
}

CheckResult check_local_matches_analytic(const ValidationOptions& o) {
    CheckResult r{"A1", "numeric local coherence matches Lambda_L", false, 0.0, tol_or(o, 1e-8), {}};
    std::ostringstream d;
    for (const double g : kReferenceG) {
        const SystemParams p = reference_params(g);
        const auto times = unit_grid(p);
        const Trajectory tr = simulate(p, Approach::Local, times);
        const cplx c0 = tr.coherence.front();
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            worst = std::max(worst, std::abs(std::abs(tr.coherence[i] / c0) - std::abs(lambda_local(times[i], p))));
        }
        r.measured = std::max(r.measured, worst);
        d << "g=" << g << ": " << worst << "; ";
    }
    r.passed = r.measured <= r.tolerance;
    r.detail = d.str();
    return r;
}

CheckResult check_crossover_shapes(const ValidationOptions& o) {
    // measured: largest increase of |Lambda| at g = 0.5 (must be ~0).
    CheckResult r{"A2", "monotone at g<1, revivals at g>1", true, 0.0, tol_or(o, 1e-12), {}};
    std::ostringstream d;
    for (const double g : kReferenceG) {
        const SystemParams p = reference_params(g);
        const auto times = unit_grid(p);
        const auto mod = modulus(simulate(p, Approach::Local, times).coherence);
        if (g < 1.0) {
            double rise = 0.0;
            for (std::size_t i = 1; i < mod.size(); ++i) {
                rise = std::max(rise, mod[i] - mod[i - 1]);
            }
            r.measured = rise;
            r.passed = r.passed && rise <= r.tolerance;
            d << "g=" << g << ": max rise " << rise << "; ";
        } else {
            const auto imin = first_interior_minimum(mod);
            double rise = 0.0;
            if (imin) {
                rise = *std::max_element(mod.begin() + static_cast<std::ptrdiff_t>(*imin), mod.end()) - mod[*imin];
            }
            const bool ok = imin.has_value() && rise > 1e-6;
            r.passed = r.passed && ok;
            d << "g=" << g << ": ";
            if (imin) {
                d << "minimum at t=" << times[*imin] << ", rise " << rise << "; ";
            } else {
                d << "no interior minimum; ";
            }
        }
    }
    r.detail = d.str();
    return r;
}

CheckResult check_overlay_gap(const ValidationOptions&) {
    const double lo = kReferenceOverlayGap * (1.0 - kReferenceOverlayGapRelTol);
    const double hi = kReferenceOverlayGap * (1.0 + kReferenceOverlayGapRelTol);
    CheckResult r{"A3", "sup gap |Lambda_G| vs |Lambda_L| at g=6", false, 0.0, kReferenceOverlayGapRelTol, {}};
    const SystemParams p = reference_params(6.0);
    double gap = 0.0;
    for (const double t : linspace(0.0, 10.0 / p.gamma(), 20001)) {
        gap = std::max(gap, std::abs(std::abs(lambda_global(t, p)) - std::abs(lambda_local(t, p))));
    }
    r.measured = gap;
    r.passed = gap >= lo && gap <= hi;
    std::ostringstream d;
    d << "gap " << gap << ", accepted [" << lo << ", " << hi << "]";
    r.detail = d.str();
    return r;
}

CheckResult check_global_zeros(const ValidationOptions&) {
    CheckResult r{"A4", "infinite-temperature Lambda_G zeros and peak spacing", false, 0.0, 0.0, {}};
    const SystemParams p = reference_params(6.0);
    const double t_end = 10.0 / p.gamma();
    const std::size_t n = 3001;
    const auto times = linspace(0.0, t_end, n);
    const double step = times[1] - times[0];
    r.tolerance = step;
    std::vector<double> mod(n);
    for (std::size_t i = 0; i < n; ++i) {
        mod[i] = std::abs(lambda_global(times[i], p));
    }
    std::vector<double> minima;
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (mod[i] < mod[i - 1] && mod[i] <= mod[i + 1]) {
            minima.push_back(times[i]);
        }
        if (mod[i] > mod[i - 1] && mod[i] >= mod[i + 1]) {
            maxima.push_back(times[i]);
        }
    }
    std::vector<double> predicted;
    for (int k = 0;; ++k) {
        const double tz = (2 * k + 1) * std::numbers::pi / (2.0 * p.v);
        if (tz >= t_end - step) {
            break;
        }
        predicted.push_back(tz);
    }
    bool ok = !predicted.empty() && minima.size() == predicted.size();
    double worst = 0.0;
    for (std::size_t k = 0; ok && k < predicted.size(); ++k) {
        worst = std::max(worst, std::abs(minima[k] - predicted[k]));
    }
    const double spacing = std::numbers::pi / p.v;
    for (std::size_t k = 1; k < maxima.size(); ++k) {
        worst = std::max(worst, std::abs((maxima[k] - maxima[k - 1]) - spacing));
    }
    ok = ok && maxima.size() >= 2;
    r.measured = worst;
    r.passed = ok && worst <= step;
    std::ostringstream d;
    d << minima.size() << " minima vs " << predicted.size() << " predicted zeros, " << maxima.size()
      << " peaks; worst offset " << worst << " (grid step " << step << ")";
    r.detail = d.str();
    return r;
}

CheckResult check_secular_vs_closed_form(const ValidationOptions& o) {
    CheckResult r{"A5", "secular decomposition reproduces closed-form global operators", true, 0.0, tol_or(o, 1e-10),
                  {}};
    std::ostringstream d;
    for (const double delta : {0.0, 5.0}) {
        SystemParams p = reference_params(6.0);
        p.delta = delta;
        const ComplexMatrix h = build_hamiltonian(p);
        const auto closed = global_jump_operators(p);
        const RateMap rates = detailed_balance_rate_map(p);
        const double tol = default_bohr_tolerance(p);
        std::vector<JumpOperator> derived = secular_decompose(h, kron(ops::identity2(), ops::lowering()), rates, tol);
        const auto absorb = secular_decompose(h, kron(ops::identity2(), ops::raising()), rates, tol);
        derived.insert(derived.end(), absorb.begin(), absorb.end());
        double worst = 0.0;
        std::size_t matched = 0;
        for (const auto& c : closed) {
            const JumpOperator* best = nullptr;
            for (const auto& s : derived) {
                if (std::abs(*s.bohr_frequency() - *c.bohr_frequency()) <= 1e3 * tol) {
                    best = &s;
                }
            }
            if (best == nullptr) {
                r.passed = false;
                continue;
            }
            ++matched;
            worst = std::max(worst, phase_aligned_distance(c.matrix(), best->matrix()));
            worst = std::max(worst, std::abs(best->rate() - c.rate()) / c.rate());
        }
        r.measured = std::max(r.measured, worst);
        d << "Delta=" << delta << ": matched " << matched << "/" << closed.size() << " (secular produced "
          << derived.size() << "), worst " << worst << "; ";
    }
    r.passed = r.passed && r.measured <= r.tolerance;
    r.detail = d.str();
    return r;
}

CheckResult check_cptp(const ValidationOptions& o) {
    CheckResult r{"A6", "CPTP along trajectories and Choi positivity", true, 0.0, tol_or(o, 1e-10), {}};
    std::ostringstream d;
    for (const Approach a : {Approach::Local, Approach::Global}) {
        for (const double g : kReferenceG) {
            const SystemParams p = reference_params(g);
            const Trajectory tr = simulate(p, a, unit_grid(p));
            for (const auto& s : tr.diagnostics) {
                r.measured = std::max({r.measured, s.hermiticity, s.trace_deviation, -s.min_eigenvalue});
            }
            const Superoperator gen = build_liouvillian(build_hamiltonian(p), jump_operators(a, p));
            for (const double scale : {0.1, 1.0, 10.0}) {
                const CpReport cp = is_completely_positive(propagate(gen, scale / p.gamma()), r.tolerance);
                r.measured = std::max({r.measured, -cp.min_eigenvalue, cp.trace_preservation_deviation});
                if (!cp.completely_positive || !cp.trace_preserving) {
                    r.passed = false;
                    d << to_string(a) << " g=" << g << " t=" << scale << "/gamma fails Choi check; ";
                }
            }
        }
    }
    r.passed = r.passed && r.measured <= r.tolerance;
    d << "worst residual " << r.measured;
    r.detail = d.str();
    return r;
}

CheckResult check_pure_dephasing(const ValidationOptions& o) {
    CheckResult r{"A7", "qubit populations conserved at Delta=0", false, 0.0, tol_or(o, 1e-10), {}};
    for (const double g : kReferenceG) {
        for (const double dp0 : {0.0, 0.6}) {
            SystemParams p = reference_params(g);
            p.delta_p0 = dp0;
            const double pop0 = 0.8;
            const cplx coh{0.2, -0.3};
            const auto times = unit_grid(p);
            for (const Approach a : {Approach::Local, Approach::Global}) {
                const Trajectory tr = simulate(p, a, times, Integrator::Exponential, {coh, pop0});
                for (const auto& pops : tr.qubit_populations) {
                    r.measured = std::max({r.measured, std::abs(pops[0] - pop0), std::abs(pops[1] - (1.0 - pop0))});
                }
            }
        }
    }
    r.passed = r.measured <= r.tolerance;
    r.detail = "local and global, g in {0.5, 2, 6}, dp0 in {0, 0.6}";
    return r;
}

CheckResult check_detailed_balance(const ValidationOptions& o) {
    CheckResult r{"A8", "detailed balance gamma_plus / gamma_minus = exp(-beta eps_I)", true, 0.0,
                  tol_or(o, 4.0 * std::numeric_limits<double>::epsilon()), {}};
    SystemParams p = reference_params(6.0);
    std::size_t cases = 0;
    for (const double gm : {0.01, 1.0, 37.5}) {
        p.gamma_minus = gm;
        for (int e = -5; e <= 1; ++e) {
            for (const double m : {1.0, 3.0}) {
                const double beta = m * std::pow(10.0, e);
                p.beta = InverseTemperature{beta};
                const double expected = std::exp(-beta * p.epsilon_I);
                const ThermalRates tr = thermal_rates(p);
                const double err = std::abs(tr.plus / tr.minus - expected) / expected;
                r.measured = std::max(r.measured, err);
                ++cases;
            }
        }
        p.beta = InverseTemperature::infinite_temperature();
        const ThermalRates tr = thermal_rates(p);
        if (tr.plus != tr.minus) {
            r.passed = false;
        }
        ++cases;
    }
    r.passed = r.passed && r.measured <= r.tolerance;
    r.detail = std::to_string(cases) + " (gamma_minus, beta) pairs, beta in [1e-5, 30] plus infinite temperature";
    return r;
}

CheckResult check_regime_diagram(const ValidationOptions&) {
    CheckResult r{"A9", "regime diagram labels and boundaries", true, 0.0, 0.0, {}};
    DiagramSpec spec;
    spec.fixed = reference_params(6.0);
    spec.v_range = {0.05, 10.0, 50};
    spec.gamma_range = {0.05, 40.0, 50};
    const RegimeDiagram dia = regime_diagram(spec);
    const double v_star = spec.eta * std::min(spec.fixed.omega(), spec.fixed.epsilon_I);

    std::size_t mismatches = 0;
    std::set<RegimeLabel> seen;
    const std::size_t nv = dia.v_axis.size();
    const std::size_t ng = dia.gamma_axis.size();
    for (std::size_t iv = 0; iv < nv; ++iv) {
        for (std::size_t ig = 0; ig < ng; ++ig) {
            const double v = dia.v_axis[iv];
            const double gam = dia.gamma_axis[ig];
            const RegimeLabel lab = dia.at(iv, ig);
            seen.insert(lab);
            const bool global = lab == RegimeLabel::GlobalOnly || lab == RegimeLabel::Both;
            const bool local = lab == RegimeLabel::LocalOnly || lab == RegimeLabel::Both;
            if (global != (2.0 * v / gam > 1.0) || local != (v <= v_star)) {
                ++mismatches;
            }
            // Any label change between neighbours must straddle one of the two boundaries.
            if (iv + 1 < nv && dia.at(iv + 1, ig) != lab) {
                const double v2 = dia.v_axis[iv + 1];
                const bool straddles = (v <= v_star && v2 > v_star) || (2.0 * v <= gam && 2.0 * v2 > gam);
                mismatches += straddles ? 0 : 1;
            }
            if (ig + 1 < ng && dia.at(iv, ig + 1) != lab) {
                const double g2 = dia.gamma_axis[ig + 1];
                mismatches += (2.0 * v > gam && 2.0 * v <= g2) ? 0 : 1;
            }
        }
    }
    r.measured = static_cast<double>(mismatches);
    r.passed = mismatches == 0 && seen.size() == 4;
    r.detail = std::to_string(nv) + "x" + std::to_string(ng) + " grid, " + std::to_string(seen.size()) +
               " distinct labels, " + std::to_string(mismatches) + " inconsistencies";
    return r;
}

CheckResult check_integrator_agreement(const ValidationOptions& o, std::chrono::steady_clock::time_point start) {
    CheckResult r{"A10", "Runge-Kutta vs exponential propagation; runtime budget", true, 0.0, tol_or(o, 1e-8), {}};
    for (const Approach a : {Approach::Local, Approach::Global}) {
        for (const double g : kReferenceG) {
            const SystemParams p = reference_params(g);
            const auto times = unit_grid(p);
            const Trajectory ex = simulate(p, a, times, Integrator::Exponential);
            const Trajectory rk = simulate(p, a, times, Integrator::RungeKutta);
            for (std::size_t i = 0; i < times.size(); ++i) {
                r.measured = std::max(r.measured, max_abs(ex.states[i].matrix() - rk.states[i].matrix()));
            }
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool fast = elapsed <= o.runtime_budget_seconds;
    r.passed = r.measured <= r.tolerance && fast;
    std::ostringstream d;
    d << "max entry difference " << r.measured << "; suite runtime " << elapsed << " s (budget "
      << o.runtime_budget_seconds << " s)";
    r.detail = d.str();
    return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance(const ValidationOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> out;
    out.push_back(check_local_matches_analytic(opts));
    out.push_back(check_crossover_shapes(opts));
    out.push_back(check_overlay_gap(opts));
    out.push_back(check_global_zeros(opts));
    out.push_back(check_secular_vs_closed_form(opts));
    out.push_back(check_cptp(opts));
    out.push_back(check_pure_dephasing(opts));
    out.push_back(check_detailed_balance(opts));
    out.push_back(check_regime_diagram(opts));
    out.push_back(check_integrator_agreement(opts, start));
    return out;
}

std::string format_check_line(const CheckResult& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-4s %s  measured=%.3e tol=%.3e  ", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                  r.measured, r.tolerance);
    return std::string(buf) + r.name + " (" + r.detail + ")";
}

}  // namespace qimp
