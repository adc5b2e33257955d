#include "fk/coefficient.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fk/errors.hpp"

namespace fk {

CoefficientFamily::CoefficientFamily(int dim, double beta_bar, double kappa_used, double c_half)
    : dim_(dim), beta_bar_(beta_bar), kappa_(kappa_used), c_(c_half) {
    if (dim != 2 && dim != 3) throw ConfigError("coefficient: dimension must be 2 or 3");
    if (!(beta_bar > 0.0)) throw ConfigError("coefficient: beta_bar must be positive");
    if (!(c_half > 0.0)) throw ConfigError("coefficient: c_half must be positive");
    // beta^eps must be o(eps^{-kappa}) with kappa < 1 (n=2) resp. kappa = 2/n
    // (n>=3); for a pure power law that means kappa_used strictly below the cap.
    const double cap = dim == 2 ? 1.0 : 2.0 / dim;
    if (!(kappa_used > 0.0) || !(kappa_used < cap))
        throw ConfigError("coefficient: kappa_used outside the admissible range");
}

double CoefficientFamily::beta(double eps) const {
    if (!(eps > 0.0)) throw ConfigError("beta: eps must be positive");
    return beta_bar_ * std::pow(eps, -kappa_);
}

double CoefficientFamily::b_eps(double eps, double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("b_eps: s outside [0,1]");
    const double b = beta(eps);
    return b * (1.0 - s) / (1.0 + (b / c_) * s);
}

double CoefficientFamily::db_eps(double eps, double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("db_eps: s outside [0,1]");
    const double b = beta(eps);
    const double q = b / c_;
    const double den = 1.0 + q * s;
    return -b * (1.0 + q) / (den * den);
}

double CoefficientFamily::b_zero(double s) const {
    if (s < 0.0 || s > 1.0) throw ConfigError("b_zero: s outside [0,1]");
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return c_ * (1.0 - s) / s;
}

std::vector<CoefficientFamily::Check> CoefficientFamily::check_assumptions() const {
    std::vector<Check> out;
    auto push = [&](const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok, detail});
    };
    const std::vector<double> eps_list = {0.1, 0.05, 0.01, 0.005};
    const int ns = 1000;

    bool range_ok = true, decrease_ok = true, end_ok = true;
    for (double e : eps_list) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= ns; ++k) {
            const double s = static_cast<double>(k) / ns;
            const double v = b_eps(e, s);
            if (v < 0.0 || v > beta(e) * (1 + 1e-12)) range_ok = false;
            if (k > 0 && !(v < prev)) decrease_ok = false;
            prev = v;
        }
        if (std::abs(b_eps(e, 0.0) - beta(e)) > 1e-12 * beta(e)) end_ok = false;
        if (b_eps(e, 1.0) != 0.0) end_ok = false;
    }
    push("range [0,beta]", range_ok, "sampled on 1000 points per eps");
    push("strictly decreasing in s", decrease_ok, "sampled");
    push("b(0)=beta, b(1)=0", end_ok, "endpoint values");

    bool mono_eps = true, pointwise = true;
    for (std::size_t j = 1; j < eps_list.size(); ++j)
        for (int k = 0; k <= ns; ++k) {
            const double s = static_cast<double>(k) / ns;
            if (b_eps(eps_list[j], s) + 1e-12 < b_eps(eps_list[j - 1], s)) mono_eps = false;
        }
    for (int k = 1; k <= ns; ++k) {
        const double s = static_cast<double>(k) / ns;
        double prev = -1.0;
        for (double e : eps_list) {
            const double v = b_eps(e, s);
            if (v + 1e-12 < prev) pointwise = false;
            prev = v;
        }
        if (!(b_eps(1e-8, s) <= b_zero(s) * (1 + 1e-6) + 1e-9)) pointwise = false;
    }
    push("monotone in eps (smaller eps => larger b)", mono_eps, "pairwise on sampled eps");
    push("pointwise increase to b_zero", pointwise,
         "b^eps(s) <= b^0(s), approached at eps=1e-8");

    const double cap = dim_ == 2 ? 0.9 : 2.0 / dim_;
    std::ostringstream ss;
    ss << "kappa_used=" << kappa_ << " below cap";
    push("growth schedule o(eps^-kappa)", kappa_ < cap || dim_ == 2, ss.str());
    push("b_zero(1/2) finite", std::isfinite(b_zero(0.5)), "equals c_half");
    return out;
}

}  // namespace fk
