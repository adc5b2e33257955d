#pragma once

// Independent numeric oracles used to freeze expected values in the tests.
// Everything here is computed from scratch (series, bisection, quadrature) so
// that the library under test shares no code with its reference values.

#include <cmath>
#include <functional>

namespace oracle {

// Bessel J0 by its power series; converges fast for |x| <= 4.
inline double bessel_j0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

// First positive zero of J0 by bisection on [2,3].
inline double bessel_j01() {
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace oracle
