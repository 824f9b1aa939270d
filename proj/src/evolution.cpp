#include "qimp/evolution.hpp"

#include "qimp/errors.hpp"
#include "qimp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qimp {

Superoperator build_liouvillian(const ComplexMatrix& hamiltonian, std::span<const JumpOperator> jumps) {
    if (hamiltonian.rows() != kDim || hamiltonian.cols() != kDim) {
        throw DimensionError("build_liouvillian: Hamiltonian must be 4x4");
    }
    const ComplexMatrix id = ComplexMatrix::identity(kDim);
    ComplexMatrix gen = cplx{0.0, -1.0} * (kron(id, hamiltonian) - kron(transpose(hamiltonian), id));
    for (const JumpOperator& jump : jumps) {
        const ComplexMatrix& l = jump.matrix();
        const ComplexMatrix ldl = dagger(l) * l;
        gen += jump.rate() * (kron(conj(l), l) - 0.5 * kron(id, ldl) - 0.5 * kron(transpose(ldl), id));
    }
    return {std::move(gen), SuperKind::Generator};
}

Superoperator propagate(const Superoperator& gen, double t) {
    if (gen.kind != SuperKind::Generator) {
        throw ParameterError("propagate: expected a generator");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ParameterError("propagate: time must be finite and >= 0");
    }
    return {expm(t * gen.matrix), SuperKind::Propagator};
}

ComplexMatrix apply_superoperator(const Superoperator& s, const ComplexMatrix& rho) {
    const std::vector<cplx> out = matvec(s.matrix, vectorize(rho));
    return unvectorize(out, rho.rows());
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, std::span<const JumpOperator> jumps,
                           const ComplexMatrix& rho) {
    ComplexMatrix out = cplx{0.0, -1.0} * commutator(hamiltonian, rho);
    for (const JumpOperator& jump : jumps) {
        const ComplexMatrix& l = jump.matrix();
        const ComplexMatrix ld = dagger(l);
        const ComplexMatrix ldl = ld * l;
        out += jump.rate() * (l * rho * ld - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

namespace {

void check_state(const ComplexMatrix& rho, double t, StateDiagnostics& diag) {
    diag = diagnose_state(rho);
    auto fail = [&](const char* what, double value) {
        std::ostringstream os;
        os << "state invariant violated at t = " << t << ": " << what << " = " << value;
        throw InvariantViolation(os.str(), t, value);
    };
    if (diag.trace_deviation > kStateTolerance) {
        fail("trace deviation", diag.trace_deviation);
    }
    if (diag.hermiticity > kStateTolerance) {
        fail("hermiticity deviation", diag.hermiticity);
    }
    if (diag.min_eigenvalue < -kStateTolerance) {
        fail("min eigenvalue", diag.min_eigenvalue);
    }
}

void record(Trajectory& traj, double t, const ComplexMatrix& rho) {
    StateDiagnostics diag;
    check_state(rho, t, diag);
    traj.times.push_back(t);
    traj.states.emplace_back(rho);
    traj.diagnostics.push_back(diag);
    const ComplexMatrix rq = partial_trace_impurity(rho);
    const ComplexMatrix ri = partial_trace_qubit(rho);
    traj.coherence.push_back(rq(0, 1));
    traj.qubit_populations.push_back({rq(0, 0).real(), rq(1, 1).real()});
    traj.impurity_populations.push_back({ri(0, 0).real(), ri(1, 1).real()});
}

// Dormand-Prince 5(4) on the linear autonomous system y' = G y.
class DormandPrince {
public:
    DormandPrince(const ComplexMatrix& gen, const RungeKuttaOptions& opts)
        : gen_(gen), opts_(opts), n_(gen.rows()), k_(7, std::vector<cplx>(n_)), tmp_(n_), ynew_(n_) {
        const double scale = std::max(norm_1(gen_), 1e-12);
        h_ = 0.01 / scale;
    }

    void advance(std::vector<cplx>& y, double t0, double t1) {
        const auto& kern = kernels::active();
        double t = t0;
        rhs(y, k_[0]);
        while (t < t1) {
            if (++steps_ > opts_.max_steps) {
                throw std::runtime_error("Runge-Kutta: step budget exhausted");
            }
            const bool last = t + h_ >= t1;
            const double h = last ? t1 - t : h_;
            stage(y, h, {kA21}, 1);
            stage(y, h, {kA31, kA32}, 2);
            stage(y, h, {kA41, kA42, kA43}, 3);
            stage(y, h, {kA51, kA52, kA53, kA54}, 4);
            stage(y, h, {kA61, kA62, kA63, kA64, kA65}, 5);
            // 5th-order solution; its derivative is the FSAL stage.
            ynew_ = y;
            const double b[6] = {kB1, 0.0, kB3, kB4, kB5, kB6};
            for (std::size_t s = 0; s < 6; ++s) {
                if (b[s] != 0.0) {
                    kern.axpy(h * b[s], k_[s].data(), ynew_.data(), n_);
                }
            }
            rhs(ynew_, k_[6]);

            const double e[7] = {kE1, 0.0, kE3, kE4, kE5, kE6, kE7};
            double err = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                cplx est{};
                for (std::size_t s = 0; s < 7; ++s) {
                    est += e[s] * k_[s][i];
                }
                est *= h;
                const double sc = opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
                err += std::norm(est) / (sc * sc);
            }
            err = std::sqrt(err / static_cast<double>(n_));

            if (err <= 1.0) {
                t = last ? t1 : t + h;
                y.swap(ynew_);
                k_[0].swap(k_[6]);
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!last || err > 1.0) {
                h_ = h * factor;
            }
        }
    }

    std::size_t steps() const noexcept { return steps_; }

private:
    static constexpr double kA21 = 1.0 / 5.0;
    static constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
    static constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
    static constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                            kA54 = -212.0 / 729.0;
    static constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                            kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
    static constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                            kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
    static constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                            kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

    void rhs(const std::vector<cplx>& y, std::vector<cplx>& out) const {
        kernels::active().gemv(gen_.data().data(), y.data(), out.data(), n_, n_);
    }

    void stage(const std::vector<cplx>& y, double h, std::initializer_list<double> a, std::size_t index) {
        const auto& kern = kernels::active();
        tmp_ = y;
        std::size_t s = 0;
        for (double coeff : a) {
            kern.axpy(h * coeff, k_[s].data(), tmp_.data(), n_);
            ++s;
        }
        rhs(tmp_, k_[index]);
    }

    const ComplexMatrix& gen_;
    RungeKuttaOptions opts_;
    std::size_t n_;
    std::vector<std::vector<cplx>> k_;
    std::vector<cplx> tmp_;
    std::vector<cplx> ynew_;
    double h_;
    std::size_t steps_ = 0;
};

void require_grid(std::span<const double> times) {
    if (times.empty()) {
        throw ParameterError("evolve: empty time grid");
    }
    if (!(times.front() >= 0.0)) {
        throw ParameterError("evolve: times must be >= 0");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) {
            throw ParameterError("evolve: non-finite time");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ParameterError("evolve: times must be strictly increasing");
        }
    }
}

}  // namespace

Trajectory evolve(const DensityMatrix4& rho0, const Superoperator& gen, std::span<const double> times,
                  Integrator integrator, const RungeKuttaOptions& rk) {
    if (gen.kind != SuperKind::Generator) {
        throw ParameterError("evolve: expected a generator");
    }
    require_grid(times);

    Trajectory traj;
    traj.times.reserve(times.size());
    std::vector<cplx> y = vectorize(rho0.matrix());
    double t_prev = 0.0;

    if (integrator == Integrator::Exponential) {
        double cached_dt = -1.0;
        Superoperator step;
        for (double t : times) {
            const double dt = t - t_prev;
            if (dt > 0.0) {
                if (dt != cached_dt) {
                    step = propagate(gen, dt);
                    cached_dt = dt;
                }
                y = matvec(step.matrix, y);
            }
            t_prev = t;
            record(traj, t, unvectorize(y, kDim));
        }
    } else {
        DormandPrince stepper(gen.matrix, rk);
        for (double t : times) {
            if (t > t_prev) {
                stepper.advance(y, t_prev, t);
            }
            t_prev = t;
            record(traj, t, unvectorize(y, kDim));
        }
    }
    return traj;
}

ComplexMatrix choi_matrix(const Superoperator& prop) {
    if (prop.matrix.rows() != kLiouvilleDim || prop.matrix.cols() != kLiouvilleDim) {
        throw DimensionError("choi_matrix: expected a 16x16 superoperator");
    }
    ComplexMatrix c(kLiouvilleDim, kLiouvilleDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            const std::size_t col = i + kDim * j;  // vec(|i><j|)
            for (std::size_t a = 0; a < kDim; ++a) {
                for (std::size_t b = 0; b < kDim; ++b) {
                    c(i * kDim + a, j * kDim + b) = prop.matrix(a + kDim * b, col);
                }
            }
        }
    }
    return c;
}

CpReport is_completely_positive(const Superoperator& prop, double tol) {
    if (prop.kind != SuperKind::Propagator) {
        throw ParameterError("is_completely_positive: expected a propagator");
    }
    const ComplexMatrix c = choi_matrix(prop);
    CpReport report;
    report.min_eigenvalue = hermitian_eigensystem(0.5 * (c + dagger(c))).values.front();
    report.completely_positive = report.min_eigenvalue >= -tol;

    ComplexMatrix reduced(kDim, kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            for (std::size_t a = 0; a < kDim; ++a) {
                reduced(i, j) += c(i * kDim + a, j * kDim + a);
            }
        }
    }
    report.trace_preservation_deviation = frobenius_norm(reduced - ComplexMatrix::identity(kDim));
    report.trace_preserving = report.trace_preservation_deviation <= tol;
    return report;
}

}  // namespace qimp
