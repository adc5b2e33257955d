#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fk/domain.hpp"
#include "fk/errors.hpp"

using namespace fk;

TEST_CASE("ball domain basics") {
    BallDomain d2(2, 1.5);
    CHECK(d2.volume() == doctest::Approx(kPi * 2.25).epsilon(1e-14));
    CHECK(d2.boundary_measure() == doctest::Approx(2 * kPi * 1.5).epsilon(1e-14));
    BallDomain d3(3, 1.0);
    CHECK(d3.volume() == doctest::Approx(4.0 / 3.0 * kPi).epsilon(1e-14));
    CHECK(d3.boundary_measure() == doctest::Approx(4 * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(BallDomain(4, 1.0), ConfigError);
    CHECK_THROWS_AS(BallDomain(2, -1.0), ConfigError);
}

TEST_CASE("radial grid: exact shell quadrature") {
    CHECK_THROWS_AS(Grid::radial(BallDomain(2, 1.0), 4), ConfigError);
    for (int dim : {2, 3}) {
        auto g = Grid::radial(BallDomain(dim, 1.0), 100);
        CHECK(g->total_weight() ==
              doctest::Approx(g->domain().volume()).epsilon(1e-12));
        for (int i = 0; i < g->size(); ++i) {
            CHECK(g->radii()[i] > 0.0);
            CHECK(g->radii()[i] < 1.0);
            if (i) CHECK(g->radii()[i] > g->radii()[i - 1]);
        }
        CHECK(g->boundary_layer()[g->size() - 1] == 1);
    }
}

TEST_CASE("cartesian grid: mask area and dihedral symmetry") {
    CHECK_THROWS_AS(Grid::cartesian(BallDomain(2, 1.0), 8), ConfigError);
    CHECK_THROWS_AS(Grid::cartesian(BallDomain(3, 1.0), 64), ConfigError);
    auto g = Grid::cartesian(BallDomain(2, 1.0), 64);
    const double rel = std::abs(g->total_weight() - kPi) / kPi;
    CHECK(rel <= 4.0 * g->spacing());
    const int M = g->resolution();
    auto in = [&](int ix, int iy) {
        return g->cell_to_dof()[static_cast<std::size_t>(ix) * M + iy] >= 0;
    };
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy) {
            CHECK(in(ix, iy) == in(M - 1 - ix, iy));
            CHECK(in(ix, iy) == in(ix, M - 1 - iy));
            CHECK(in(ix, iy) == in(iy, ix));
        }
}

TEST_CASE("weighted mean: constants, indicators, linearity") {
    auto g = Grid::radial(BallDomain(2, 1.0), 400);
    CHECK(weighted_mean(ScalarField(g, 0.7)) == doctest::Approx(0.7).epsilon(1e-13));

    auto indicator = [&](double r0) {
        std::vector<double> v(g->size(), 0.0);
        for (int i = 0; i < g->size(); ++i) v[i] = g->radii()[i] < r0 ? 1.0 : 0.0;
        return ScalarField(g, std::move(v));
    };
    CHECK(std::abs(weighted_mean(indicator(0.5)) - 0.25) < 2.0 * g->spacing());
    const double m = 0.4;
    CHECK(std::abs(weighted_mean(indicator(std::sqrt(m))) - m) < 2.0 * g->spacing());

    // linearity to machine precision
    ScalarField a = indicator(0.5), b(g, 0.3);
    std::vector<double> comb(g->size());
    for (int i = 0; i < g->size(); ++i) comb[i] = 2.0 * a[i] + 5.0 * b[i];
    CHECK(weighted_mean(ScalarField(g, comb)) ==
          doctest::Approx(2.0 * weighted_mean(a) + 5.0 * weighted_mean(b)).epsilon(1e-13));
}

TEST_CASE("dirichlet energy: cone function on the disk is exact") {
    // f(r) = 1 - r has |grad f| = 1, so the energy is exactly pi; the
    // conservative radial stencil reproduces it to machine precision.
    auto g = Grid::radial(BallDomain(2, 1.0), 128);
    std::vector<double> v(g->size());
    for (int i = 0; i < g->size(); ++i) v[i] = 1.0 - g->radii()[i];
    CHECK(dirichlet_energy(ScalarField(g, v)) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("phase field validation") {
    auto g = Grid::radial(BallDomain(2, 1.0), 64);
    std::vector<double> v(g->size(), 0.0);
    for (int i = 0; i < g->size(); ++i) v[i] = g->radii()[i] < 0.5 ? 1.0 : 0.0;
    const double m = weighted_mean(ScalarField(g, v));
    CHECK_NOTHROW(PhaseField(ScalarField(g, v), m));
    CHECK_THROWS_AS(PhaseField(ScalarField(g, v), m + 1e-6), ConfigError);  // mass off
    auto bad_box = v;
    bad_box[3] = 1.5;
    CHECK_THROWS_AS(PhaseField(ScalarField(g, bad_box),
                               weighted_mean(ScalarField(g, bad_box))),
                    ConfigError);
    auto bad_bc = v;
    bad_bc[g->size() - 1] = 0.5;
    CHECK_THROWS_AS(PhaseField(ScalarField(g, bad_bc),
                               weighted_mean(ScalarField(g, bad_bc))),
                    ConfigError);
    CHECK_THROWS_AS(PhaseField(ScalarField(g, v), 1.5), ConfigError);
}

TEST_CASE("interface measure") {
    auto g = Grid::radial(BallDomain(2, 1.0), 64);
    std::vector<double> v(g->size(), 0.0);
    for (int i = 0; i < g->size(); ++i) v[i] = g->radii()[i] < 0.5 ? 1.0 : 0.0;
    PhaseField sharp(ScalarField(g, v), weighted_mean(ScalarField(g, v)));
    CHECK(interface_measure(sharp, 0.1) == 0.0);
    CHECK_THROWS_AS(interface_measure(sharp, 0.6), ConfigError);

    std::vector<double> half(g->size(), 0.5);
    half[g->size() - 1] = 0.0;
    ScalarField hf(g, half);
    PhaseField mid(hf, weighted_mean(hf));
    CHECK(interface_measure(mid, 0.1) ==
          doctest::Approx(g->total_weight() - g->weights()[g->size() - 1]).epsilon(1e-13));
}

TEST_CASE("csv roundtrip is exact") {
    for (auto g : {Grid::radial(BallDomain(2, 1.0), 32),
                   Grid::cartesian(BallDomain(2, 1.0), 16)}) {
        std::vector<double> v(g->size());
        for (int i = 0; i < g->size(); ++i) v[i] = std::sin(i * 0.7) / 3.0;
        ScalarField f(g, v);
        std::stringstream ss;
        write_csv(ss, f);
        ScalarField back = read_csv(ss, g);
        for (int i = 0; i < g->size(); ++i) CHECK(back[i] == f[i]);
    }
}

TEST_CASE("scalar field validation") {
    auto g = Grid::radial(BallDomain(2, 1.0), 32);
    CHECK_THROWS_AS(ScalarField(g, std::vector<double>(5, 0.0)), ConfigError);
    std::vector<double> nan_vals(g->size(), 0.0);
    nan_vals[0] = std::nan("");
    CHECK_THROWS_AS(ScalarField(g, nan_vals), ConfigError);
}
