#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fk/objective.hpp"
#include "fk/errors.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {

// Admissible field from raw interior values: boundary layer zeroed, mass taken
// from the resulting mean.
PhaseField make_phase(const GridPtr& g, const std::vector<double>& raw) {
    std::vector<double> v = raw;
    for (int i = 0; i < g->size(); ++i)
        if (g->boundary_layer()[i]) v[i] = 0.0;
    ScalarField f(g, std::move(v));
    return PhaseField(f, weighted_mean(f));
}

PhaseField ramp_phase(const GridPtr& g, double r0, double ell) {
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i)
        v[i] = std::clamp((r0 - g->radii()[i]) / ell, 0.0, 1.0);
    return make_phase(g, v);
}

}  // namespace

TEST_CASE("gl_energy of a radial ramp matches the analytic value") {
    auto g = Grid::radial(BallDomain(2, 1.0), 2000);
    const double r0 = 0.6, ell = 0.2, eps = 0.05;
    const PhaseField phi = ramp_phase(g, r0, ell);
    auto psi = Potential::double_obstacle();
    const EnergyBreakdown e = gl_energy(phi, eps, psi);
    // |grad phi| = 1/ell on the annulus r0-ell < r < r0
    const double grad_exact =
        (eps / 2.0) / (ell * ell) * kPi * (r0 * r0 - (r0 - ell) * (r0 - ell));
    // (1/eps) int psi(phi): psi = s(1-s)/2 with s linear in r across the band
    const double pot_exact =
        oracle::simpson(
            [&](double r) {
                const double s = (r0 - r) / ell;
                return 0.5 * s * (1.0 - s) * 2.0 * kPi * r;
            },
            r0 - ell, r0, 4000) /
        eps;
    CHECK(e.gradient_term == doctest::Approx(grad_exact).epsilon(2e-3));
    CHECK(e.potential_term == doctest::Approx(pot_exact).epsilon(2e-3));
    CHECK(e.total == doctest::Approx(e.gradient_term + e.potential_term).epsilon(1e-14));
    CHECK_THROWS_AS(gl_energy(phi, 0.0, psi), ConfigError);
}

TEST_CASE("j_eps: eigenvalue wiring and affine gamma dependence") {
    auto g = Grid::radial(BallDomain(2, 1.0), 1000);
    auto psi = Potential::double_well();
    CoefficientFamily b(2, 2.0, 0.5, 10.0);
    const double eps = 0.05;
    const PhaseField phi = ramp_phase(g, 0.6, 0.2);
    EigenOptions opt;
    opt.tol = 1e-10;
    const EnergyBreakdown e0 = gl_energy(phi, eps, psi);
    const EnergyBreakdown j0 = j_eps(phi, eps, 0.0, psi, b, opt);
    // gamma = 0 reduces J to the eigenvalue of the manually assembled operator
    std::vector<double> bv(g->size());
    for (int i = 0; i < g->size(); ++i) bv[i] = b.b_eps(eps, phi.field()[i]);
    const EigenPair manual = principal_eigenpair(OperatorHandle(g, std::move(bv)), 1e-10);
    CHECK(j0.lambda1 == doctest::Approx(manual.lambda).epsilon(1e-10));
    CHECK(j0.j == doctest::Approx(j0.lambda1).epsilon(1e-14));
    const EnergyBreakdown j1 = j_eps(phi, eps, 0.3, psi, b, opt);
    CHECK(j1.j == doctest::Approx(j1.lambda1 + 0.3 * e0.total).epsilon(1e-12));
    CHECK_THROWS_AS(j_eps(phi, eps, -0.1, psi, b), ConfigError);
}

TEST_CASE("first_variation is the directional derivative of j_eps") {
    auto g = Grid::radial(BallDomain(2, 1.0), 300);
    auto psi = Potential::double_well();
    CoefficientFamily b(2, 5.0, 0.5, 10.0);
    const double eps = 0.05, gamma = 0.01;

    std::vector<double> raw(g->size());
    for (int i = 0; i < g->size(); ++i)
        raw[i] = 0.5 + 0.2 * std::sin(2.0 * kPi * g->radii()[i]);
    const PhaseField phi = make_phase(g, raw);

    // direction: boundary zero and weighted-mean zero
    std::vector<double> delta(g->size());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g->size(); ++i) {
        delta[i] = g->boundary_layer()[i] ? 0.0 : std::sin(3.0 * kPi * g->radii()[i]);
        num += g->weights()[i] * delta[i];
        den += g->boundary_layer()[i] ? 0.0 : g->weights()[i];
    }
    for (int i = 0; i < g->size(); ++i)
        if (!g->boundary_layer()[i]) delta[i] -= num / den;

    EigenOptions opt;
    opt.tol = 1e-11;
    EigenPair pair{0.0, ScalarField(g, 0.0), 0.0, 0};
    j_eps(phi, eps, gamma, psi, b, opt, &pair);
    const ScalarField grad = first_variation(phi, eps, gamma, psi, b, pair);
    double directional = 0.0;
    for (int i = 0; i < g->size(); ++i)
        directional += g->weights()[i] * grad[i] * delta[i];

    const double t = 1e-5;
    auto j_at = [&](double tt) {
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i) v[i] = phi.field()[i] + tt * delta[i];
        ScalarField f(g, std::move(v));
        return j_eps(PhaseField(f, weighted_mean(f)), eps, gamma, psi, b, opt).j;
    };
    const double fd = (j_at(t) - j_at(-t)) / (2.0 * t);
    CHECK(directional == doctest::Approx(fd).epsilon(1e-3));
}

TEST_CASE("j_zero against the disk oracle and the trivial convention") {
    auto g = Grid::radial(BallDomain(2, 1.0), 2000);
    auto psi = Potential::double_obstacle();
    const double gamma = 0.01;
    const EnergyBreakdown e = j_zero(SharpShape::ball(0.5), g, gamma, psi, 1e-9);
    const double j01sq = std::pow(oracle::bessel_j01(), 2);
    CHECK(e.lambda1 == doctest::Approx(4.0 * j01sq).epsilon(1e-4));
    CHECK(e.perimeter_term == doctest::Approx(gamma * psi.c0() * kPi).epsilon(1e-5));
    CHECK(e.contact_term == 0.0);
    CHECK(e.j == doctest::Approx(e.lambda1 + e.perimeter_term).epsilon(1e-12));

    // annulus touching the domain boundary contributes a contact term
    const EnergyBreakdown a = j_zero(SharpShape::annulus(0.5, 1.0), g, gamma, psi, 1e-9);
    CHECK(a.contact_term == doctest::Approx(gamma * psi.c0() * 2.0 * kPi).epsilon(1e-5));

    // tiny shape: empty discrete space, lambda = +inf convention
    const EnergyBreakdown t = j_zero(SharpShape::ball(1e-4), g, gamma, psi, 1e-9);
    CHECK(std::isinf(t.lambda1));
    CHECK(std::isinf(t.j));
}

TEST_CASE("modica_mortola_tv: indicator jump and lower bound") {
    auto g = Grid::radial(BallDomain(2, 1.0), 2000);
    auto psi = Potential::double_obstacle();
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = g->radii()[i] < 0.5 ? 1.0 : 0.0;
    ScalarField f(g, std::move(v));
    const PhaseField ind(f, weighted_mean(f));
    // single jump of size Psi(1) - Psi(0) = c0 across the r = 0.5 circle
    CHECK(modica_mortola_tv(ind, psi) ==
          doctest::Approx(psi.c0() * kPi).epsilon(2e-3));

    // Modica-Mortola: E^eps(phi) >= TV(Psi(phi)) for smooth transitions
    for (double ell : {0.1, 0.2, 0.3}) {
        const PhaseField phi = ramp_phase(g, 0.6, ell);
        for (double eps : {0.01, 0.05, 0.2}) {
            CHECK(gl_energy(phi, eps, psi).total >=
                  modica_mortola_tv(phi, psi) * (1.0 - 1e-10));
        }
    }
}
