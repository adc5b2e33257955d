#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fk/coefficient.hpp"
#include "fk/errors.hpp"

using namespace fk;

TEST_CASE("beta schedule") {
    CoefficientFamily b(2, 1.0, 0.5, 10.0);
    CHECK(b.beta(0.01) == doctest::Approx(10.0).epsilon(1e-13));
    double prev = 0.0;
    for (double e : {0.1, 0.01, 0.001}) {
        CHECK(b.beta(e) > prev);
        prev = b.beta(e);
    }
    // admissibility: beta^eps / eps^{-0.9} -> 0 along eps = 10^-k (n = 2)
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 6; ++k) {
        const double e = std::pow(10.0, -k);
        const double ratio = b.beta(e) / std::pow(e, -0.9);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    CHECK_THROWS_AS(b.beta(0.0), ConfigError);
    CHECK_THROWS_AS(CoefficientFamily(2, 1.0, 1.0, 10.0), ConfigError);   // kappa cap n=2
    CHECK_THROWS_AS(CoefficientFamily(3, 1.0, 0.7, 10.0), ConfigError);   // kappa cap n=3
    CHECK_NOTHROW(CoefficientFamily(3, 1.0, 0.5, 10.0));
    CHECK_THROWS_AS(CoefficientFamily(2, -1.0, 0.5, 10.0), ConfigError);
}

TEST_CASE("b_eps endpoints, range, monotonicity") {
    CoefficientFamily b(2, 1.0, 0.5, 10.0);
    for (double e : {0.1, 0.05, 0.01}) {
        CHECK(b.b_eps(e, 1.0) == 0.0);
        CHECK(b.b_eps(e, 0.0) == doctest::Approx(b.beta(e)).epsilon(1e-13));
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 1000; ++k) {
            const double v = b.b_eps(e, k / 1000.0);
            CHECK(v >= 0.0);
            CHECK(v <= b.beta(e) * (1 + 1e-12));
            if (k) CHECK(v < prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(b.b_eps(0.1, 1.5), ConfigError);
}

TEST_CASE("pointwise limit b_zero") {
    CoefficientFamily b(2, 1.0, 0.5, 10.0);
    CHECK(b.b_zero(1.0) == 0.0);
    CHECK(b.b_zero(0.5) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(std::isinf(b.b_zero(0.0)));
    // algebraic limit at s = 1/2 via a very small eps: beta = 1e5, so the
    // relative defect 2 c / beta is about 2e-4
    CHECK(b.b_eps(1e-10, 0.5) == doctest::Approx(10.0).epsilon(1e-3));
    // monotone increase toward the limit on sampled s and eps
    for (int k = 1; k <= 1000; ++k) {
        const double s = k / 1000.0;
        double prev = -1.0;
        for (double e : {0.1, 0.05, 0.01, 0.005}) {
            const double v = b.b_eps(e, s);
            CHECK(v >= prev - 1e-12);
            CHECK(v <= b.b_zero(s) + 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("db_eps matches central differences") {
    CoefficientFamily b(2, 2.0, 0.5, 7.0);
    const double e = 0.03;
    for (int k = 1; k < 100; ++k) {
        const double s = k / 100.0;
        const double fd = (b.b_eps(e, s + 1e-6) - b.b_eps(e, s - 1e-6)) / 2e-6;
        CHECK(b.db_eps(e, s) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(b.db_eps(e, s) < 0.0);
    }
}

TEST_CASE("assumption report is all green for the built-in family") {
    CoefficientFamily b(2, 1.0, 0.5, 10.0);
    for (const auto& c : b.check_assumptions()) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.ok);
    }
}
