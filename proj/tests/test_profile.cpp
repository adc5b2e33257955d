#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fk/errors.hpp"
#include "fk/objective.hpp"
#include "fk/profile.hpp"
#include "oracles.hpp"

using namespace fk;

TEST_CASE("double-well profile is the tanh kink") {
    auto sol = solve_profile(Potential::double_well());
    // eta' = sqrt(2 psi) with psi = s^2(1-s)^2/4 integrates to
    // eta(t) = (1 + tanh(t / (2 sqrt 2))) / 2
    for (double t : {-8.0, -3.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
        const double exact = 0.5 * (1.0 + std::tanh(t / (2.0 * std::sqrt(2.0))));
        CHECK(sol.eta(t) == doctest::Approx(exact).epsilon(1e-8));
    }
    CHECK(!sol.hit_zero().has_value());
    CHECK(!sol.hit_one().has_value());
    REQUIRE(sol.tail_zero().has_value());
    REQUIRE(sol.tail_one().has_value());
    // exponential tails with rate 1/sqrt(2)
    CHECK(sol.tail_zero()->rate == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(sol.tail_one()->rate == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    // the fitted window [5, t_max] still carries the O(e^{-2t/sqrt 2})
    // correction, so the relative fit deviation sits near 2e-2
    CHECK(sol.tail_zero()->residual < 5e-2);
    CHECK_THROWS_AS(solve_profile(Potential::double_well(), 5.0), ConfigError);
}

TEST_CASE("double-obstacle profile hits the obstacle at +-pi/2") {
    auto sol = solve_profile(Potential::double_obstacle());
    // eta' = sqrt(s(1-s)) integrates to eta(t) = (1 + sin t) / 2 on [-pi/2, pi/2]
    for (double t : {-1.2, -0.5, 0.0, 0.3, 1.0}) {
        const double exact = 0.5 * (1.0 + std::sin(t));
        CHECK(sol.eta(t) == doctest::Approx(exact).epsilon(1e-5));
    }
    REQUIRE(sol.hit_zero().has_value());
    REQUIRE(sol.hit_one().has_value());
    CHECK(*sol.hit_zero() == doctest::Approx(-kPi / 2.0).epsilon(1e-3));
    CHECK(*sol.hit_one() == doctest::Approx(kPi / 2.0).epsilon(1e-3));
    CHECK(sol.eta(-5.0) == 0.0);
    CHECK(sol.eta(5.0) == 1.0);
    CHECK(!sol.tail_zero().has_value());
}

TEST_CASE("profile_rho: branches, continuity, monotonicity") {
    auto sol = solve_profile(Potential::double_well());
    for (double eps : {0.1, 0.04, 0.01}) {
        const double se = std::sqrt(eps);
        CHECK(profile_rho(sol, eps, 2.0 * se + 1e-12) == 1.0);
        CHECK(profile_rho(sol, eps, -2.0 * se - 1e-12) == 0.0);
        CHECK(profile_rho(sol, eps, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
        // continuity across all four seams
        for (double seam : {-2.0 * se, -se, se, 2.0 * se}) {
            CHECK(profile_rho(sol, eps, seam - 1e-9) ==
                  doctest::Approx(profile_rho(sol, eps, seam + 1e-9)).epsilon(1e-6));
        }
        double prev = -1.0;
        for (int k = -400; k <= 400; ++k) {
            const double v = profile_rho(sol, eps, k * 0.01 * se);
            CHECK(v >= prev - 1e-14);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("recovery sequence: admissibility, L1 convergence, energy limit") {
    auto g = Grid::radial(BallDomain(2, 1.0), 3000);
    auto psi = Potential::double_obstacle();
    auto sol = solve_profile(psi);
    auto shape = SharpShape::ball(0.5);
    std::vector<double> chi(g->size());
    for (int i = 0; i < g->size(); ++i)
        chi[i] = shape.contains_radial(g->radii()[i]) ? 1.0 : 0.0;
    const ScalarField indicator(g, chi);

    double prev_l1 = 1e300;
    // the ball r = 1/2 keeps clearance 0.5, so eps <= 0.0625 is admissible
    for (double eps : {0.04, 0.02, 0.01}) {
        const ScalarField phi = recovery_sequence(shape, eps, g, sol);
        for (int i = 0; i < g->size(); ++i) {
            CHECK(phi[i] >= 0.0);
            CHECK(phi[i] <= 1.0);
        }
        const double l1 = lp_distance(phi, indicator, 1);
        CHECK(l1 < prev_l1);
        CHECK(l1 <= 4.0 * kPi * 0.5 * 2.0 * std::sqrt(eps));  // interface band width
        prev_l1 = l1;
        const PhaseField p(phi, weighted_mean(phi));
        // Modica-Mortola limit: E^eps -> c0 * perimeter = c0 * pi
        CHECK(gl_energy(p, eps, psi).total ==
              doctest::Approx(psi.c0() * kPi).epsilon(0.08));
    }

    // shape too close to the domain boundary for the requested eps
    CHECK_THROWS_AS(recovery_sequence(SharpShape::ball(0.95), 0.04, g, sol),
                    ConfigError);
}

TEST_CASE("gamma_check rows converge toward the sharp functional") {
    auto g = Grid::radial(BallDomain(2, 1.0), 1500);
    auto psi = Potential::double_obstacle();
    CoefficientFamily b(2, 1e6, 0.5, 10.0);
    auto rows = gamma_check(SharpShape::ball(0.5), {0.04, 0.02, 0.01}, g, 0.01,
                            psi, b, 1e-9);
    REQUIRE(rows.size() == 3);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        CHECK(r.penalty >= 0.0);
        CHECK(r.energy > 0.0);
        CHECK(std::abs(r.f_eps - r.f_zero) ==
              doctest::Approx(std::abs(r.energy_gap + r.eigen_gap)).epsilon(1e-9));
        // the double-obstacle recovery saturates the energy limit almost
        // immediately; the gap sits at quadrature-noise level for every eps
        CHECK(std::abs(r.energy_gap) <= 1e-4 * std::abs(r.f_zero));
        if (k) CHECK(r.l1_distance < rows[k - 1].l1_distance);
    }
    CHECK_THROWS_AS(
        gamma_check(SharpShape::ball(0.5), {0.04, 0.08}, g, 0.01, psi, b, 1e-9),
        ConfigError);
}
