#include "doctest.h"
#include "oracles.hpp"

#include "qimp/dissipators.hpp"
#include "qimp/errors.hpp"

#include <cmath>
#include <numbers>

using namespace qimp;

namespace {

SystemParams params(double delta, double v) {
    SystemParams p;
    p.epsilon = 20.0;
    p.delta = delta;
    p.epsilon_I = 20.0;
    p.v = v;
    p.gamma_minus = 1.0;
    return p;
}

const JumpOperator* find_frequency(const std::vector<JumpOperator>& ops, double w, double tol) {
    for (const auto& op : ops) {
        if (op.bohr_frequency() && std::abs(*op.bohr_frequency() - w) <= tol) {
            return &op;
        }
    }
    return nullptr;
}

}  // namespace

TEST_SUITE("dissipators") {

TEST_CASE("JumpOperator invariants") {
    const ComplexMatrix l = kron(ops::identity2(), ops::lowering());
    CHECK_THROWS_AS(JumpOperator(l, 0.0, JumpLabel::LocalEmission), ParameterError);
    CHECK_THROWS_AS(JumpOperator(l, 1.0, JumpLabel::GlobalDecay1), ParameterError);
    CHECK_THROWS_AS(JumpOperator(ops::lowering(), 1.0, JumpLabel::LocalEmission), ParameterError);
    CHECK_NOTHROW(JumpOperator(l, 1.0, JumpLabel::DerivedSecular, 20.0));
}

TEST_CASE("local jump operators") {
    SystemParams p = params(0.0, 2.0);
    p.beta = InverseTemperature{std::log(2.0) / p.epsilon_I};
    const auto ops = local_jump_operators(p);
    REQUIRE(ops.size() == 2);
    const ComplexMatrix& lm = ops[0].matrix();
    CHECK(ops[0].label() == JumpLabel::LocalEmission);
    int nonzero = 0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (lm(r, c) != cplx{}) {
                ++nonzero;
                CHECK(lm(r, c) == cplx{1.0, 0.0});
                CHECK(r % 2 == 0);      // impurity |0>
                CHECK(c == r + 1);      // from impurity |1>, same qubit state
            }
        }
    }
    CHECK(nonzero == 2);
    CHECK(dagger(lm) == ops[1].matrix());
    CHECK(ops[0].rate() == 1.0);
    CHECK(ops[1].rate() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("local absorption is dropped when gamma_plus underflows") {
    SystemParams p = params(0.0, 2.0);
    p.beta = InverseTemperature{1e3};
    CHECK(local_jump_operators(p).size() == 1);
}

TEST_CASE("mixing angles") {
    const MixingAngles zero = mixing_angles(params(0.0, 2.0));
    CHECK(zero.theta0 == 0.0);
    CHECK(zero.theta1 == 0.0);
    CHECK(zero.c == 1.0);

    SystemParams eq = params(20.0, 0.0);
    const MixingAngles quarter = mixing_angles(eq);
    CHECK(quarter.theta0 == doctest::Approx(std::numbers::pi / 4));
    CHECK(quarter.theta1 == doctest::Approx(std::numbers::pi / 4));
    CHECK(quarter.c == doctest::Approx(1.0));

    SystemParams deg = params(0.0, 20.0);  // eps - v = 0
    CHECK_THROWS_AS(mixing_angles(deg), DegenerateAngle);
}

TEST_CASE("overlap factor c equals the eigenvector overlap of the conditioned qubit Hamiltonians") {
    const SystemParams p = params(5.0, 2.0);
    const MixingAngles angles = mixing_angles(p);
    CHECK(angles.theta0 == doctest::Approx(std::atan2(5.0, 22.0)));
    CHECK(angles.theta1 == doctest::Approx(std::atan2(5.0, 18.0)));
    auto conditioned = [&](int tau) {
        const double bias = p.epsilon + p.v * (1 - 2 * tau);
        return -0.5 * bias * ops::sigma_z() - 0.5 * p.delta * ops::sigma_x();
    };
    const auto e0 = hermitian_eigensystem(conditioned(0));
    const auto e1 = hermitian_eigensystem(conditioned(1));
    for (std::size_t level = 0; level < 2; ++level) {
        cplx overlap{};
        for (std::size_t i = 0; i < 2; ++i) {
            overlap += std::conj(e0.vectors(i, level)) * e1.vectors(i, level);
        }
        CHECK(std::abs(overlap) == doctest::Approx(angles.c).epsilon(1e-13));
    }
}

TEST_CASE("global operators at Delta = 0 collapse to conditioned impurity lowering") {
    const auto g = global_jump_operators(params(0.0, 2.0));
    REQUIRE(g.size() == 4);
    ComplexMatrix l1(4, 4), l2(4, 4);
    l1(0, 1) = 1.0;  // |0,0><0,1|
    l2(2, 3) = 1.0;  // |1,0><1,1|
    CHECK(g[0].matrix() == l1);
    CHECK(g[1].matrix() == l2);
    CHECK(g[0].matrix() + g[1].matrix() == kron(ops::identity2(), ops::lowering()));
    CHECK(g[2].matrix() == dagger(g[0].matrix()));
    CHECK(g[3].matrix() == dagger(g[1].matrix()));
    CHECK(*g[0].bohr_frequency() == doctest::Approx(22.0));
    CHECK(*g[1].bohr_frequency() == doctest::Approx(18.0));
    CHECK(*g[2].bohr_frequency() == doctest::Approx(-22.0));
}

TEST_CASE("global operators at v = 0 sum to the local operators") {
    const SystemParams p = params(0.0, 0.0);
    const auto g = global_jump_operators(p);
    const auto l = local_jump_operators(p);
    CHECK(g[0].matrix() + g[1].matrix() == l[0].matrix());
    CHECK(g[2].matrix() + g[3].matrix() == l[1].matrix());
    CHECK(g[0].rate() == l[0].rate());
    CHECK(g[2].rate() == l[1].rate());
}

TEST_CASE("global operators are eigenoperators of H (Delta = 5)") {
    const SystemParams p = params(5.0, 2.0);
    const ComplexMatrix h = build_hamiltonian(p);
    for (const auto& op : global_jump_operators(p)) {
        CHECK(eigenoperator_residual(h, op) <= 1e-10 * std::max(1.0, frobenius_norm(op.matrix())));
    }
}

TEST_CASE("detailed-balance pairing of global operators") {
    SystemParams p = params(5.0, 2.0);
    p.beta = InverseTemperature{0.03};
    const auto g = global_jump_operators(p);
    REQUIRE(g.size() == 4);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(g[k + 2].matrix() == dagger(g[k].matrix()));
        CHECK(*g[k + 2].bohr_frequency() == -*g[k].bohr_frequency());
        CHECK(g[k + 2].rate() / g[k].rate() == doctest::Approx(std::exp(-0.03 * 20.0)).epsilon(1e-15));
    }
}

TEST_CASE("non-degeneracy warning") {
    std::vector<std::string> warnings;
    SystemParams p = params(0.0, 0.2);  // 2v = 0.4 < gamma = 2
    global_jump_operators(p, &warnings);
    CHECK(warnings.size() == 1);
    warnings.clear();
    p.v = 2.0;
    global_jump_operators(p, &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("secular decomposition of the decoupled diagonal case") {
    const SystemParams p = params(0.0, 0.0);
    const ComplexMatrix h = ComplexMatrix::diagonal({-20.0, 0.0, 0.0, 20.0});
    const ComplexMatrix a = kron(ops::identity2(), ops::lowering());
    const auto sec = secular_decompose(h, a, detailed_balance_rate_map(p), default_bohr_tolerance(p));
    // Both transitions sit at eps_I: one component equal to the summed global operators.
    REQUIRE(sec.size() == 1);
    CHECK(*sec[0].bohr_frequency() == doctest::Approx(20.0));
    const auto g = global_jump_operators(p);
    CHECK(phase_aligned_distance(sec[0].matrix(), g[0].matrix() + g[1].matrix()) <= 1e-12);
    CHECK(sec[0].rate() == p.gamma_minus);
}

TEST_CASE("secular decomposition reproduces closed-form global operators at Delta = 0") {
    const SystemParams p = params(0.0, 2.0);
    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexMatrix a = kron(ops::identity2(), ops::lowering());
    const auto sec = secular_decompose(h, a, detailed_balance_rate_map(p), default_bohr_tolerance(p));
    REQUIRE(sec.size() == 2);
    for (const auto& closed : global_jump_operators(p)) {
        if (closed.rate() != p.gamma_minus || *closed.bohr_frequency() < 0) {
            continue;
        }
        const JumpOperator* match = find_frequency(sec, *closed.bohr_frequency(), 1e-9);
        REQUIRE(match != nullptr);
        CHECK(phase_aligned_distance(closed.matrix(), match->matrix()) <= 1e-10);
        CHECK(match->rate() == closed.rate());
    }
}

TEST_CASE("secular decomposition at Delta = 5: eigenoperators, completeness, closed-form match") {
    const SystemParams p = params(5.0, 2.0);
    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexMatrix a = kron(ops::identity2(), ops::lowering());
    const auto sec = secular_decompose(h, a, detailed_balance_rate_map(p), default_bohr_tolerance(p));
    // c-weighted |+0,0><+1,1|, |-0,0><-1,1| plus two cross transitions ~ sin((theta0-theta1)/2).
    REQUIRE(sec.size() == 4);
    ComplexMatrix sum(4, 4);
    for (const auto& op : sec) {
        CHECK(eigenoperator_residual(h, op) <= 1e-9 * frobenius_norm(op.matrix()));
        sum += op.matrix();
    }
    CHECK(max_abs(sum - a) <= 1e-12);

    const MixingAngles angles = mixing_angles(p);
    const auto closed = global_jump_operators(p);
    double cross_norm = 0.0;
    for (const auto& op : sec) {
        bool matched = false;
        for (std::size_t k = 0; k < 2; ++k) {
            if (std::abs(*op.bohr_frequency() - *closed[k].bohr_frequency()) <= 1e-9) {
                CHECK(phase_aligned_distance(closed[k].matrix(), op.matrix()) <= 1e-10);
                matched = true;
            }
        }
        if (!matched) {
            cross_norm = std::max(cross_norm, frobenius_norm(op.matrix()));
        }
    }
    CHECK(cross_norm == doctest::Approx(std::abs(std::sin(0.5 * (angles.theta0 - angles.theta1)))).epsilon(1e-12));
}

TEST_CASE("secular decomposition: completeness and eigenoperator property on random Hamiltonians") {
    oracle::Rng rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = rng.hermitian(4);
        const ComplexMatrix a = rng.matrix(4, 4);
        const auto sec = secular_decompose(h, a, [](double) { return 1.0; }, 1e-9);
        ComplexMatrix sum(4, 4);
        for (const auto& op : sec) {
            CHECK(eigenoperator_residual(h, op) <= 1e-9 * frobenius_norm(op.matrix()));
            sum += op.matrix();
        }
        CHECK(max_abs(sum - a) <= 1e-12);
    }
}

TEST_CASE("secular decomposition flags ambiguous clustering") {
    // Bohr frequencies 1 and 1 + 5e-9 with tol 1e-9.
    const ComplexMatrix h = ComplexMatrix::diagonal({0.0, 1.0, 10.0, 11.0 + 5e-9});
    ComplexMatrix a(4, 4);
    a(0, 1) = 1.0;
    a(2, 3) = 1.0;
    CHECK_THROWS_AS(secular_decompose(h, a, [](double) { return 1.0; }, 1e-9), AmbiguousClustering);
    CHECK_THROWS_AS(secular_decompose(h, a, [](double) { return 1.0; }, 0.0), ParameterError);
    // A tolerance that clearly merges or clearly separates is fine.
    CHECK(secular_decompose(h, a, [](double) { return 1.0; }, 1e-7).size() == 1);
    CHECK(secular_decompose(h, a, [](double) { return 1.0; }, 1e-12).size() == 2);
}

TEST_CASE("phase aligned distance ignores a global phase") {
    oracle::Rng rng(4);
    const ComplexMatrix a = rng.matrix(4, 4);
    CHECK(phase_aligned_distance(a, std::polar(1.0, 1.234) * a) <= 1e-14);
    CHECK(phase_aligned_distance(a, -a) <= 1e-14);
    CHECK(phase_aligned_distance(a, 2.0 * a) == doctest::Approx(frobenius_norm(a)));
}

}  // TEST_SUITE
