#include "qimp/dissipators.hpp"

#include "qimp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qimp {

std::string_view to_string(JumpLabel label) noexcept {
    switch (label) {
        case JumpLabel::LocalEmission: return "LocalEmission";
        case JumpLabel::LocalAbsorption: return "LocalAbsorption";
        case JumpLabel::GlobalDecay1: return "GlobalDecay1";
        case JumpLabel::GlobalDecay2: return "GlobalDecay2";
        case JumpLabel::GlobalAbsorb1: return "GlobalAbsorb1";
        case JumpLabel::GlobalAbsorb2: return "GlobalAbsorb2";
        case JumpLabel::DerivedSecular: return "DerivedSecular";
    }
    return "Unknown";
}

JumpOperator::JumpOperator(ComplexMatrix matrix, double rate, JumpLabel label,
                           std::optional<double> bohr_frequency)
    : matrix_(std::move(matrix)), rate_(rate), label_(label), bohr_frequency_(bohr_frequency) {
    if (matrix_.rows() != kDim || matrix_.cols() != kDim) {
        throw ParameterError("jump operator must be 4x4");
    }
    for (const auto& z : matrix_.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ParameterError("jump operator has non-finite entries");
        }
    }
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
        throw ParameterError("jump rate must be finite and > 0");
    }
    const bool needs_frequency = label_ != JumpLabel::LocalEmission && label_ != JumpLabel::LocalAbsorption;
    if (needs_frequency && !bohr_frequency_) {
        throw ParameterError(std::string(to_string(label_)) + " operator requires a Bohr frequency");
    }
    if (bohr_frequency_ && !std::isfinite(*bohr_frequency_)) {
        throw ParameterError("Bohr frequency must be finite");
    }
}

std::vector<JumpOperator> local_jump_operators(const SystemParams& p) {
    const ThermalRates rates = thermal_rates(p);
    std::vector<JumpOperator> out;
    out.emplace_back(kron(ops::identity2(), ops::lowering()), rates.minus, JumpLabel::LocalEmission);
    if (rates.plus > 0.0) {
        out.emplace_back(kron(ops::identity2(), ops::raising()), rates.plus, JumpLabel::LocalAbsorption);
    }
    return out;
}

MixingAngles mixing_angles(const SystemParams& p) {
    double theta[2];
    for (int tau = 0; tau < 2; ++tau) {
        const double bias = p.epsilon + p.v * (1 - 2 * tau);
        if (p.delta == 0.0 && bias == 0.0) {
            throw DegenerateAngle("mixing angle undefined: Delta = 0 and eps + v(1-2tau) = 0 for tau = " +
                                  std::to_string(tau));
        }
        theta[tau] = std::atan2(p.delta, bias);
    }
    return {theta[0], theta[1], std::cos(0.5 * (theta[0] - theta[1]))};
}

namespace {

void fix_phase_largest_positive(std::vector<cplx>& x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs(x[i]) > std::abs(x[best])) {
            best = i;
        }
    }
    if (std::abs(x[best]) == 0.0) {
        return;
    }
    const cplx rot = std::conj(x[best]) / std::abs(x[best]);
    for (auto& z : x) {
        z *= rot;
    }
}

// |s>|tau> as a 4-vector in the |q i> product basis.
std::vector<cplx> embed(const std::vector<cplx>& qubit, int tau) {
    std::vector<cplx> out(kDim);
    for (std::size_t q = 0; q < 2; ++q) {
        out[2 * q + static_cast<std::size_t>(tau)] = qubit[q];
    }
    return out;
}

ComplexMatrix outer(const std::vector<cplx>& ket, const std::vector<cplx>& bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) {
            m(i, j) = ket[i] * std::conj(bra[j]);
        }
    }
    return m;
}

}  // namespace

ConditionedQubitBasis conditioned_qubit_basis(const SystemParams& p, int tau) {
    const MixingAngles angles = mixing_angles(p);
    const double theta = tau == 0 ? angles.theta0 : angles.theta1;
    ConditionedQubitBasis b;
    b.plus = {std::cos(0.5 * theta), std::sin(0.5 * theta)};
    b.minus = {-std::sin(0.5 * theta), std::cos(0.5 * theta)};
    fix_phase_largest_positive(b.plus);
    fix_phase_largest_positive(b.minus);
    const double omega = p.omega_tau(tau);
    b.energy_plus = -0.5 * omega;
    b.energy_minus = 0.5 * omega;
    return b;
}

std::vector<JumpOperator> global_jump_operators(const SystemParams& p, std::vector<std::string>* warnings) {
    p.validate();
    const MixingAngles angles = mixing_angles(p);
    const ThermalRates rates = thermal_rates(p);

    if (warnings != nullptr && !(p.conditioned_splitting_gap() > p.gamma())) {
        std::ostringstream os;
        os << "global approach: spectrum not fully non-degenerate, |Omega_0 - Omega_1| = "
           << p.conditioned_splitting_gap() << " <= gamma = " << p.gamma()
           << "; the full secular approximation is not justified";
        warnings->push_back(os.str());
    }

    const ConditionedQubitBasis b0 = conditioned_qubit_basis(p, 0);
    const ConditionedQubitBasis b1 = conditioned_qubit_basis(p, 1);
    // Impurity energies: -(eps_I/2) for tau = 0, +(eps_I/2) for tau = 1.
    const double half_ei = 0.5 * p.epsilon_I;

    struct Branch {
        const std::vector<cplx>& low;
        const std::vector<cplx>& high;
        double omega;
        JumpLabel decay;
        JumpLabel absorb;
    };
    const Branch branches[] = {
        {b0.plus, b1.plus, (b1.energy_plus + half_ei) - (b0.energy_plus - half_ei), JumpLabel::GlobalDecay1,
         JumpLabel::GlobalAbsorb1},
        {b0.minus, b1.minus, (b1.energy_minus + half_ei) - (b0.energy_minus - half_ei), JumpLabel::GlobalDecay2,
         JumpLabel::GlobalAbsorb2},
    };

    std::vector<JumpOperator> out;
    for (const Branch& br : branches) {
        out.emplace_back(angles.c * outer(embed(br.low, 0), embed(br.high, 1)), rates.minus, br.decay, br.omega);
    }
    if (rates.plus > 0.0) {
        for (std::size_t k = 0; k < 2; ++k) {
            const Branch& br = branches[k];
            out.emplace_back(dagger(out[k].matrix()), rates.plus, br.absorb, -br.omega);
        }
    }
    return out;
}

RateMap detailed_balance_rate_map(const SystemParams& p) {
    const ThermalRates rates = thermal_rates(p);
    return [rates](double w) {
        if (w > 0.0) {
            return rates.minus;
        }
        if (w < 0.0) {
            return rates.plus;
        }
        return 0.0;
    };
}

double default_bohr_tolerance(const SystemParams& p) {
    return 1e-9 * std::max(std::abs(p.epsilon) + std::abs(p.delta) + std::abs(p.v) + std::abs(p.epsilon_I), 1.0);
}

namespace {

struct Cluster {
    double center;
    std::vector<std::size_t> members;
};

// Single-linkage clustering of values; neighbours closer than tol merge.
std::vector<Cluster> cluster_values(const std::vector<double>& values, double tol, const char* what) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<Cluster> clusters;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double x = values[order[k]];
        if (!clusters.empty()) {
            const double gap = x - values[order[k - 1]];
            if (gap <= tol) {
                clusters.back().members.push_back(order[k]);
                continue;
            }
            if (gap <= 10.0 * tol) {
                std::ostringstream os;
                os << "ambiguous " << what << " clustering: values " << values[order[k - 1]] << " and " << x
                   << " differ by " << gap << ", within (tol, 10 tol] for tol = " << tol;
                throw AmbiguousClustering(os.str());
            }
        }
        clusters.push_back({x, {order[k]}});
    }
    for (Cluster& c : clusters) {
        double s = 0.0;
        for (std::size_t m : c.members) {
            s += values[m];
        }
        c.center = s / static_cast<double>(c.members.size());
    }
    return clusters;
}

}  // namespace

std::vector<JumpOperator> secular_decompose(const ComplexMatrix& hamiltonian, const ComplexMatrix& coupling,
                                            const RateMap& rate_map, double tol_bohr) {
    if (!(tol_bohr > 0.0)) {
        throw ParameterError("tol_bohr must be > 0");
    }
    if (!hamiltonian.is_square() || coupling.rows() != hamiltonian.rows() || coupling.cols() != hamiltonian.cols()) {
        throw DimensionError("secular_decompose: coupling and Hamiltonian shapes differ");
    }
    const Eigensystem eig = hermitian_eigensystem(hamiltonian);
    const std::size_t n = eig.values.size();

    const std::vector<Cluster> levels = cluster_values(eig.values, tol_bohr, "energy");
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(levels.size());
    for (const Cluster& level : levels) {
        ComplexMatrix proj(n, n);
        for (std::size_t k : level.members) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    proj(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
                }
            }
        }
        projectors.push_back(std::move(proj));
    }

    // Nonzero blocks P(E) A P(E') with their Bohr frequencies E' - E.
    std::vector<ComplexMatrix> blocks;
    std::vector<double> freqs;
    const double scale = std::max(frobenius_norm(coupling), 1.0);
    for (std::size_t a = 0; a < levels.size(); ++a) {
        for (std::size_t b = 0; b < levels.size(); ++b) {
            ComplexMatrix block = projectors[a] * coupling * projectors[b];
            if (frobenius_norm(block) < 1e-14 * scale) {
                continue;
            }
            blocks.push_back(std::move(block));
            freqs.push_back(levels[b].center - levels[a].center);
        }
    }

    const std::vector<Cluster> groups = cluster_values(freqs, tol_bohr, "Bohr frequency");
    std::vector<JumpOperator> out;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        ComplexMatrix sum(n, n);
        for (std::size_t m : it->members) {
            sum += blocks[m];
        }
        if (frobenius_norm(sum) < 1e-12) {
            continue;
        }
        const double rate = rate_map(it->center);
        if (!(rate > 0.0)) {
            continue;
        }
        out.emplace_back(std::move(sum), rate, JumpLabel::DerivedSecular, it->center);
    }
    return out;
}

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const cplx overlap = frobenius_inner(b, a);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0};
    return frobenius_norm(a - phase * b);
}

double eigenoperator_residual(const ComplexMatrix& hamiltonian, const JumpOperator& op) {
    if (!op.bohr_frequency()) {
        throw ParameterError("eigenoperator_residual: operator has no Bohr frequency");
    }
    return frobenius_norm(commutator(hamiltonian, op.matrix()) + *op.bohr_frequency() * op.matrix());
}

}  // namespace qimp
