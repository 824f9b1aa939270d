#include "doctest.h"

#include "qimp/analytic.hpp"
#include "qimp/errors.hpp"
#include "qimp/evolution.hpp"

#include <cmath>
#include <numbers>

using namespace qimp;

namespace {

// Infinite temperature, dp0 = 0, gamma = 1 unless stated: v = g/2.
SystemParams at_g(double g, double gamma = 1.0) {
    SystemParams p;
    p.epsilon = 20.0;
    p.epsilon_I = 20.0;
    p.gamma_minus = 0.5 * gamma;
    p.v = 0.5 * g * gamma;
    return p;
}

double sup_gap(double g, std::size_t n = 20001) {
    const SystemParams p = at_g(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        worst = std::max(worst, std::abs(std::abs(lambda_global(t, p)) - std::abs(lambda_local(t, p))));
    }
    return worst;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("local solution parameters") {
    SystemParams p = at_g(2.0);
    p.delta_p0 = 0.3;
    p.beta = InverseTemperature{0.01};
    const LocalSolutionParams s = local_solution_params(p);
    CHECK(s.alpha.real() >= 0.0);
    const cplx expected_sq{1.0 - s.g * s.g, 2.0 * s.g * s.delta_p_bar};
    CHECK(std::abs(s.alpha * s.alpha - expected_sq) <= 1e-14);
    CHECK(std::abs(s.A * 2.0 * s.alpha - ((1.0 + s.alpha) + cplx{0.0, s.g * s.delta_p0})) <= 1e-14);

    // dp_bar = 0, g > 1: alpha = i sqrt(g^2 - 1).
    const LocalSolutionParams s2 = local_solution_params(at_g(6.0));
    CHECK(std::abs(s2.alpha - cplx{0.0, std::sqrt(35.0)}) <= 1e-14);
}

TEST_CASE("Lambda_L(0) = 1") {
    for (double g : {0.0, 0.3, 1.0, 2.0, 6.0}) {
        SystemParams p = at_g(g);
        p.delta_p0 = -0.4;
        CHECK(std::abs(lambda_local(0.0, p) - 1.0) <= 1e-15);
    }
    CHECK_THROWS_AS(lambda_local(-1.0, at_g(1.0)), ParameterError);
}

TEST_CASE("g < 1: modulus decays monotonically") {
    for (double g : {0.1, 0.5, 0.9, 0.999}) {
        const SystemParams p = at_g(g);
        double prev = std::abs(lambda_local(0.0, p));
        for (int i = 1; i <= 10000; ++i) {
            const double cur = std::abs(lambda_local(1e-3 * i, p));
            CHECK(cur - prev <= 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("g = 2 at t = pi/(gamma sqrt 3) matches the oscillatory modulus") {
    const SystemParams p = at_g(2.0);
    const double t = std::numbers::pi / std::sqrt(3.0);
    const double closed = (0.0 + 1.0 / std::sqrt(3.0)) * std::exp(-0.5 * t);
    CHECK(lambda_local_modulus_oscillatory(t, 2.0, 1.0) == doctest::Approx(closed).epsilon(1e-14));
    CHECK(std::abs(lambda_local(t, p)) == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("oscillatory modulus formula") {
    CHECK(lambda_local_modulus_oscillatory(0.0, 3.0, 2.0) == 1.0);
    CHECK_THROWS_AS(lambda_local_modulus_oscillatory(1.0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(lambda_local_modulus_oscillatory(1.0, 0.5, 1.0), ParameterError);

    SUBCASE("first zero bracketed by bisection lies in (pi/(gamma d), 2 pi/(gamma d))") {
        for (double g : {1.5, 2.0, 6.0}) {
            const double gamma = 0.7;
            const double d = std::sqrt(g * g - 1.0);
            double lo = std::numbers::pi / (gamma * d);
            double hi = 2.0 * std::numbers::pi / (gamma * d);
            const double flo = lambda_local_modulus_oscillatory(lo, g, gamma);
            const double fhi = lambda_local_modulus_oscillatory(hi, g, gamma);
            REQUIRE(flo * fhi < 0.0);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (lambda_local_modulus_oscillatory(mid, g, gamma) * flo > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            CHECK(std::tan(0.5 * gamma * d * root) == doctest::Approx(-d).epsilon(1e-9));
            // No earlier sign change.
            for (int i = 1; i < 1000; ++i) {
                CHECK(lambda_local_modulus_oscillatory(root * i / 1000.0, g, gamma) > 0.0);
            }
        }
    }

    SUBCASE("g = 6: |expression| matches |Lambda_L| on 200 points") {
        const SystemParams p = at_g(6.0);
        for (int i = 0; i < 200; ++i) {
            const double t = 10.0 * i / 199.0;
            CHECK(std::abs(std::abs(lambda_local_modulus_oscillatory(t, 6.0, 1.0)) - std::abs(lambda_local(t, p))) <= 1e-12);
        }
    }
}

TEST_CASE("|Lambda_L| <= 1 on dense grids") {
    for (double g : {0.0, 0.5, 1.0, 2.0, 6.0, 20.0}) {
        const SystemParams p = at_g(g);
        for (int i = 0; i <= 5000; ++i) {
            CHECK(std::abs(lambda_local(0.004 * i, p)) <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("g > 1: an interior local minimum exists on [0, 3 pi/(gamma d)]") {
    for (double g : {1.2, 2.0, 6.0}) {
        const SystemParams p = at_g(g);
        const double d = std::sqrt(g * g - 1.0);
        const double t_end = 3.0 * std::numbers::pi / (p.gamma() * d);
        const int n = 3000;
        bool found = false;
        for (int i = 1; i < n && !found; ++i) {
            const double a = std::abs(lambda_local(t_end * (i - 1) / n, p));
            const double b = std::abs(lambda_local(t_end * i / n, p));
            const double c = std::abs(lambda_local(t_end * (i + 1) / n, p));
            found = b < a && b < c;
        }
        CHECK(found);
    }
}

TEST_CASE("g = 1 boundary is finite and continuous") {
    const SystemParams p = at_g(1.0);
    const SystemParams below = at_g(1.0 - 1e-7);
    const SystemParams above = at_g(1.0 + 1e-7);
    for (double t : {0.5, 2.0, 8.0}) {
        const cplx mid = lambda_local(t, p);
        CHECK(std::isfinite(mid.real()));
        CHECK(std::abs(mid - lambda_local(t, below)) <= 1e-6);
        CHECK(std::abs(mid - lambda_local(t, above)) <= 1e-6);
        // Critical damping: (1 + gamma t / 2) e^{-gamma t / 2}.
        CHECK(std::abs(mid) == doctest::Approx((1.0 + 0.5 * t) * std::exp(-0.5 * t)).epsilon(1e-12));
    }
}

TEST_CASE("no coupling: Lambda_L is a pure phase") {
    SystemParams p = at_g(0.0);
    for (double t : {0.0, 1.0, 10.0, 100.0}) {
        CHECK(std::abs(std::abs(lambda_local(t, p)) - 1.0) <= 1e-12);
        CHECK(std::abs(lambda_local(t, p) - std::exp(cplx{0.0, p.epsilon * t})) <= 1e-12);
    }
}

TEST_CASE("Lambda_G normalization and infinite-temperature zeros") {
    SystemParams p = at_g(6.0);
    CHECK(std::abs(lambda_global(0.0, p) - 1.0) <= 1e-15);
    p.delta_p0 = 0.7;
    p.beta = InverseTemperature{0.05};
    CHECK(std::abs(lambda_global(0.0, p) - 1.0) <= 1e-15);

    const SystemParams q = at_g(6.0);
    for (int k = 0; k < 5; ++k) {
        const double t = (2 * k + 1) * std::numbers::pi / (2.0 * q.v);
        CHECK(std::abs(lambda_global(t, q)) <= 1e-14);
        CHECK(std::abs(lambda_global(t + 0.01, q)) > 0.0);
    }
    for (double t : {0.3, 1.7, 4.2}) {
        CHECK(std::abs(lambda_global(t, q)) ==
              doctest::Approx(std::exp(-0.5 * q.gamma() * t) * std::abs(std::cos(q.v * t))).epsilon(1e-13));
    }
}

TEST_CASE("Lambda_G matches the numerically evolved global model at g = 6") {
    SystemParams p;
    p.epsilon = 20.0;
    p.epsilon_I = 20.0;
    p.v = 2.0;
    p.gamma_minus = p.v / 6.0;
    const cplx c0 = 0.5;
    const DensityMatrix4 rho0 = initial_state(p, c0, 0.5);
    const Superoperator gen = build_liouvillian(build_hamiltonian(p), global_jump_operators(p));
    std::vector<double> times(200);
    for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = 10.0 / p.gamma() * static_cast<double>(i) / 199.0;
    }
    const Trajectory traj = evolve(rho0, gen, times);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, std::abs(traj.coherence[i] - lambda_global(times[i], p) * c0));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("global and local moduli converge as g grows") {
    const double gaps[] = {sup_gap(2.0), sup_gap(4.0), sup_gap(6.0), sup_gap(10.0)};
    CHECK(gaps[0] > gaps[1]);
    CHECK(gaps[1] > gaps[2]);
    CHECK(gaps[2] > gaps[3]);
}

TEST_CASE("crossover classes") {
    CHECK(crossover_class(0.5) == CrossoverClass::Monotonic);
    CHECK(crossover_class(6.0) == CrossoverClass::Revivals);
    CHECK(crossover_class(1.0) == CrossoverClass::Boundary);
    CHECK(crossover_class(1.0 + 1e-13) == CrossoverClass::Boundary);
    CHECK(crossover_class(1.0 + 1e-9) == CrossoverClass::Revivals);
    CHECK(crossover_class(0.0) == CrossoverClass::Monotonic);
    CHECK_THROWS_AS(crossover_class(-0.1), ParameterError);
    CHECK(to_string(CrossoverClass::Revivals) == "Revivals");
}

}  // TEST_SUITE
