#include "doctest.h"
#include "oracles.hpp"

#include "qimp/densemath.hpp"
#include "qimp/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace qimp;

TEST_SUITE("densemath") {

TEST_CASE("construction rejects non-finite entries and bad shapes") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx{nan, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    const ComplexMatrix a(2, 3);
    CHECK(a.size() == a.rows() * a.cols());
}

TEST_CASE("kron on identities and Pauli-z") {
    const ComplexMatrix i2 = ops::identity2();
    CHECK(kron(i2, i2) == ComplexMatrix::identity(4));
    CHECK(kron(ops::sigma_z(), i2) == ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}));
    CHECK(kron(ops::sigma_z(), ops::sigma_z()) == ComplexMatrix::diagonal({1.0, -1.0, -1.0, 1.0}));
}

TEST_CASE("kron is associative on integer matrices") {
    oracle::Rng rng(7);
    auto int_matrix = [&](std::size_t r, std::size_t c) {
        ComplexMatrix m(r, c);
        for (auto& z : m.data()) {
            z = cplx{std::round(rng.uniform(-5, 5)), std::round(rng.uniform(-5, 5))};
        }
        return m;
    };
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = int_matrix(2, 3);
        const ComplexMatrix b = int_matrix(3, 1);
        const ComplexMatrix c = int_matrix(2, 2);
        CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
    }
}

TEST_CASE("dagger") {
    CHECK(dagger(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));
    CHECK(dagger(ops::raising()) == ops::lowering());
    oracle::Rng rng(11);
    const ComplexMatrix a = rng.matrix(3, 5);
    CHECK(dagger(dagger(a)) == a);
    CHECK(dagger(a).rows() == 5);
}

TEST_CASE("hermitian_eigensystem on simple spectra") {
    const auto diag = hermitian_eigensystem(ComplexMatrix::diagonal({20.0, 0.0, -20.0, 0.0}));
    REQUIRE(diag.values.size() == 4);
    CHECK(diag.values[0] == doctest::Approx(-20.0));
    CHECK(diag.values[1] == doctest::Approx(0.0));
    CHECK(diag.values[2] == doctest::Approx(0.0));
    CHECK(diag.values[3] == doctest::Approx(20.0));

    const auto sx = hermitian_eigensystem(ops::sigma_x());
    CHECK(sx.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sx.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigensystem matches diagonal read-off of H at Delta = 0") {
    SystemParams p;
    p.epsilon = 20.0;
    p.epsilon_I = 20.0;
    p.v = 2.0;
    const auto eig = hermitian_eigensystem(build_hamiltonian(p));
    std::vector<double> expected;
    for (int sq : {1, -1}) {
        for (int si : {1, -1}) {
            expected.push_back(oracle::product_energy(sq, si, p.epsilon, p.v, p.epsilon_I));
        }
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(eig.values[k] == doctest::Approx(expected[k]).epsilon(1e-14));
    }
}

TEST_CASE("hermitian_eigensystem reconstruction and orthonormality (random, dim <= 16)") {
    oracle::Rng rng(2024);
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix a = rng.hermitian(n);
            const auto eig = hermitian_eigensystem(a);
            CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
            ComplexMatrix lam(n, n);
            for (std::size_t k = 0; k < n; ++k) {
                lam(k, k) = eig.values[k];
            }
            const ComplexMatrix& v = eig.vectors;
            CHECK(frobenius_norm(a - v * lam * dagger(v)) <= 1e-10 * frobenius_norm(a));
            CHECK(frobenius_norm(a * v - v * lam) <= 1e-12 * std::max(1.0, frobenius_norm(a)));
            CHECK(max_abs(dagger(v) * v - ComplexMatrix::identity(n)) <= 1e-12);
        }
    }
}

TEST_CASE("hermitian_eigensystem phase convention and determinism") {
    oracle::Rng rng(5);
    const ComplexMatrix a = rng.hermitian(6);
    const auto e1 = hermitian_eigensystem(a);
    const auto e2 = hermitian_eigensystem(a);
    CHECK(e1.vectors == e2.vectors);
    for (std::size_t k = 0; k < 6; ++k) {
        for (std::size_t i = 0; i < 6; ++i) {
            if (std::abs(e1.vectors(i, k)) > 1e-12) {
                CHECK(e1.vectors(i, k).real() > 0.0);
                CHECK(e1.vectors(i, k).imag() == doctest::Approx(0.0).epsilon(1e-15));
                break;
            }
        }
    }
}

TEST_CASE("hermitian_eigensystem rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eigensystem(ops::lowering()), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("expm simple cases") {
    CHECK(expm(ComplexMatrix(3, 3)) == ComplexMatrix::identity(3));
    const ComplexMatrix e = expm(ComplexMatrix::diagonal({cplx{0.0, std::numbers::pi}, 0.0}));
    CHECK(std::abs(e(0, 0) - cplx{-1.0, 0.0}) <= 1e-15);
    CHECK(std::abs(e(1, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e(0, 1)) == 0.0);
    CHECK_THROWS_AS(expm(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("expm agrees with a 200-term Taylor series for ||A|| <= 1") {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = oracle::scaled_to_frobenius(rng.matrix(4, 4), rng.uniform(0.05, 1.0));
        const ComplexMatrix ref = oracle::taylor_expm(a);
        CHECK(max_abs(expm(a) - ref) <= 1e-12);
    }
}

TEST_CASE("expm relative accuracy on 16x16 anti-Hermitian inputs of norm up to 100") {
    // exp(iH) = V exp(i Lambda) V^dag via the eigensolver, an independent route.
    oracle::Rng rng(31337);
    for (double norm : {1.0, 10.0, 50.0, 100.0}) {
        const ComplexMatrix h = oracle::scaled_to_frobenius(rng.hermitian(16), norm);
        const auto eig = hermitian_eigensystem(h);
        ComplexMatrix phases(16, 16);
        for (std::size_t k = 0; k < 16; ++k) {
            phases(k, k) = std::exp(cplx{0.0, eig.values[k]});
        }
        const ComplexMatrix ref = eig.vectors * phases * dagger(eig.vectors);
        const ComplexMatrix got = expm(cplx{0.0, 1.0} * h);
        CHECK(frobenius_norm(got - ref) / frobenius_norm(ref) <= 1e-12);
    }
}

TEST_CASE("expm(A) expm(-A) = I for ||A||_F <= 10") {
    oracle::Rng rng(4242);
    for (std::size_t n : {2u, 4u, 16u}) {
        for (int trial = 0; trial < 4; ++trial) {
            const ComplexMatrix a = oracle::scaled_to_frobenius(rng.matrix(n, n), rng.uniform(0.1, 10.0));
            CHECK(max_abs(expm(a) * expm(-a) - ComplexMatrix::identity(n)) <= 1e-10);
        }
    }
}

TEST_CASE("solve recovers a known solution") {
    oracle::Rng rng(3);
    const ComplexMatrix a = rng.matrix(5, 5);
    const ComplexMatrix x = rng.matrix(5, 2);
    CHECK(max_abs(solve(a, a * x) - x) <= 1e-12);
    CHECK_THROWS(solve(ComplexMatrix(2, 2), ComplexMatrix::identity(2)));
}

}  // TEST_SUITE
