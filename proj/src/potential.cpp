#include "fk/potential.hpp"

#include <algorithm>
#include <cmath>

#include "fk/errors.hpp"

namespace fk {

namespace {
// Composite Simpson with `panels` panels (rounded up to even).
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (b <= a) return 0.0;
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int k = 1; k < panels; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
}  // namespace

Potential::Potential(std::string name, std::function<double(double)> psi,
                     std::function<double(double)> dpsi)
    : name_(std::move(name)), psi_(std::move(psi)), dpsi_(std::move(dpsi)) {
    validate();
    c0_ = big_psi(1.0);
    if (!(c0_ > 0.0)) throw ConfigError("potential: c0 must be positive");
}

void Potential::validate() const {
    if (std::abs(psi_(0.0)) > 1e-12 || std::abs(psi_(1.0)) > 1e-12)
        throw ConfigError("potential: psi must vanish at 0 and 1");
    const int n = 10000;
    for (int k = 1; k < n; ++k) {
        const double s = static_cast<double>(k) / n;
        if (!(psi_(s) > 0.0))
            throw ConfigError("potential: psi must be strictly positive on (0,1)");
    }
    // Non-degenerate minima at the endpoints: psi' != 0 or psi'' > 0.
    auto check_end = [&](double s0, double dir) {
        if (std::abs(dpsi_(s0)) > 1e-8) return;
        const double t = 1e-4;
        const double second = psi_(s0 + 2 * dir * t) - 2 * psi_(s0 + dir * t) + psi_(s0);
        // require curvature bounded away from zero, not merely a positive
        // rounding residue; quartic-flat endpoints give second/t^2 -> 0
        if (!(second / (t * t) > 1e-6))
            throw ConfigError("potential: degenerate flat minimum at an endpoint");
    };
    check_end(0.0, +1.0);
    check_end(1.0, -1.0);
}

double Potential::psi(double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("psi: argument outside [0,1]");
    return psi_(s);
}

double Potential::dpsi(double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("dpsi: argument outside [0,1]");
    return dpsi_(s);
}

double Potential::big_psi(double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("big_psi: argument outside [0,1]");
    return simpson([this](double t) { return std::sqrt(2.0 * psi_(t)); }, 0.0, s, 10000);
}

double Potential::alpha_delta(double delta) const {
    if (!(delta > 0.0) || !(delta < 0.5))
        throw ConfigError("alpha_delta: delta must lie in (0,1/2)");
    const int n = 10000;
    double m = std::min(psi_(delta), psi_(1.0 - delta));
    for (int k = 1; k < n; ++k) {
        const double s = delta + (1.0 - 2.0 * delta) * k / n;
        m = std::min(m, psi_(s));
    }
    return m;
}

Potential Potential::double_well() {
    return Potential("double-well",
                     [](double s) { return 0.25 * s * s * (1.0 - s) * (1.0 - s); },
                     [](double s) { return 0.5 * s * (1.0 - s) * (1.0 - 2.0 * s); });
}

Potential Potential::double_obstacle() {
    return Potential("double-obstacle",
                     [](double s) { return 0.5 * s * (1.0 - s); },
                     [](double s) { return 0.5 - s; });
}

Potential Potential::custom(std::string name, std::function<double(double)> psi,
                            std::function<double(double)> dpsi) {
    return Potential(std::move(name), std::move(psi), std::move(dpsi));
}

Potential Potential::by_name(const std::string& name) {
    if (name == "double-well") return double_well();
    if (name == "double-obstacle") return double_obstacle();
    throw ConfigError("unknown potential: " + name);
}

}  // namespace fk
