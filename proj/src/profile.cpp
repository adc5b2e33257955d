#include "fk/profile.hpp"

#include <algorithm>
#include <cmath>

#include "fk/errors.hpp"
#include "fk/objective.hpp"

namespace fk {

double ProfileSolution::eta(double t) const {
    const std::vector<double>& side = t >= 0.0 ? fwd_ : bwd_;
    const double x = std::abs(t) / dt_;
    const std::size_t k = static_cast<std::size_t>(x);
    if (k + 1 >= side.size()) return side.back();
    const double frac = x - static_cast<double>(k);
    return side[k] + frac * (side[k + 1] - side[k]);
}

namespace {

ProfileSolution::TailFit fit_tail(const std::vector<double>& dist_to_limit, double dt,
                                  double t_from) {
    // least squares on log(dist) = log(c) - rate * t over [t_from, ...]
    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < dist_to_limit.size(); ++k) {
        const double t = k * dt;
        const double d = dist_to_limit[k];
        if (t >= t_from && d > 1e-11) {
            ts.push_back(t);
            ys.push_back(std::log(d));
        }
    }
    ProfileSolution::TailFit fit;
    if (ts.size() < 10) return fit;
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double icept = (sy - slope * st) / n;
    fit.rate = -slope;
    fit.c = std::exp(icept);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double model = icept + slope * ts[i];
        fit.residual = std::max(fit.residual,
                                std::abs(std::exp(model) - std::exp(ys[i])) / std::exp(ys[i]));
    }
    return fit;
}

}  // namespace

ProfileSolution solve_profile(const Potential& psi, double t_max) {
    if (!(t_max >= 20.0)) throw ConfigError("solve_profile: t_max must be >= 20");
    ProfileSolution sol;
    sol.name_ = psi.name();
    sol.t_max_ = t_max;
    const double dt = sol.dt_;
    auto f = [&](double s) { return std::sqrt(2.0 * psi.psi(std::clamp(s, 0.0, 1.0))); };

    // RK4 with freezing once within 1e-12 of an endpoint; `sign` +1 forward
    // (toward 1), -1 backward (toward 0).
    auto integrate = [&](double sign, std::vector<double>& out, std::optional<double>& hit,
                         double endpoint) {
        const int K = static_cast<int>(std::llround(t_max / dt));
        out.resize(K + 1);
        double y = 0.5;
        out[0] = y;
        bool frozen = false;
        for (int k = 1; k <= K; ++k) {
            if (!frozen) {
                const double k1 = sign * f(y);
                const double k2 = sign * f(y + 0.5 * dt * k1);
                const double k3 = sign * f(y + 0.5 * dt * k2);
                const double k4 = sign * f(y + dt * k3);
                y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                y = std::clamp(y, 0.0, 1.0);
                if (std::abs(y - endpoint) <= 1e-12) {
                    y = endpoint;
                    frozen = true;
                    hit = sign * k * dt;
                }
            }
            out[k] = y;
        }
    };
    integrate(+1.0, sol.fwd_, sol.hit_one_, 1.0);
    integrate(-1.0, sol.bwd_, sol.hit_zero_, 0.0);

    if (!sol.hit_one_) {
        std::vector<double> d(sol.fwd_.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = 1.0 - sol.fwd_[k];
        sol.tail_one_ = fit_tail(d, dt, 5.0);
    }
    if (!sol.hit_zero_) {
        std::vector<double> d(sol.bwd_.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = sol.bwd_[k];
        sol.tail_zero_ = fit_tail(d, dt, 5.0);  // rate measured in |t|
    }
    return sol;
}

double profile_rho(const ProfileSolution& sol, double eps, double t) {
    if (!(eps > 0.0)) throw ConfigError("profile_rho: eps must be positive");
    const double se = std::sqrt(eps);
    if (t > 2.0 * se) return 1.0;
    if (t < -2.0 * se) return 0.0;
    if (t >= -se && t <= se) return sol.eta(t / eps);
    if (t > se) {
        const double anchor = sol.eta(1.0 / se);
        return anchor + (t - se) / se * (1.0 - anchor);
    }
    const double anchor = sol.eta(-1.0 / se);
    return anchor * (t + 2.0 * se) / se;
}

ScalarField recovery_sequence(const SharpShape& shape, double eps, const GridPtr& grid,
                              const ProfileSolution& sol) {
    if (!(eps > 0.0)) throw ConfigError("recovery_sequence: eps must be positive");
    shape.validate_inside(grid->domain());
    // compact containment: the profile support must clear the domain boundary
    if (grid->domain().radius - shape.outer_radius() < 2.0 * std::sqrt(eps))
        throw ConfigError("recovery_sequence: shape too close to the domain boundary "
                          "(needs clearance 2 sqrt(eps))");
    const int n = grid->size();
    std::vector<double> v(n);
    const bool radial = grid->kind() == GridKind::Radial;
    if (radial && !shape.radially_symmetric())
        throw ConfigError("recovery_sequence: non-radial shape on a radial grid");
    for (int i = 0; i < n; ++i) {
        const double sd = radial ? shape.signed_distance_radial(grid->radii()[i])
                                 : shape.signed_distance(grid->xs()[i], grid->ys()[i]);
        v[i] = profile_rho(sol, eps, sd);
    }
    for (int i = 0; i < n; ++i)
        if (grid->boundary_layer()[i]) v[i] = 0.0;
    return ScalarField(grid, std::move(v));
}

std::vector<GammaCheckRow> gamma_check(const SharpShape& shape,
                                       const std::vector<double>& eps_list,
                                       const GridPtr& grid, double gamma,
                                       const Potential& psi, const CoefficientFamily& b,
                                       double tol) {
    if (eps_list.empty()) throw ConfigError("gamma_check: empty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw ConfigError("gamma_check: eps list must be strictly decreasing");

    const ProfileSolution sol = solve_profile(psi);
    const EnergyBreakdown sharp = j_zero(shape, grid, gamma, psi, tol);

    // indicator of E on the grid for the L1 distance
    std::vector<double> chi(grid->size());
    const bool radial = grid->kind() == GridKind::Radial;
    for (int i = 0; i < grid->size(); ++i)
        chi[i] = (radial ? shape.contains_radial(grid->radii()[i])
                         : shape.contains(grid->xs()[i], grid->ys()[i]))
                     ? 1.0
                     : 0.0;
    const ScalarField chi_f(grid, std::move(chi));

    std::vector<GammaCheckRow> rows;
    for (double eps : eps_list) {
        const ScalarField phi_eps = recovery_sequence(shape, eps, grid, sol);
        const PhaseField p(phi_eps, weighted_mean(phi_eps));
        EigenPair pair{0.0, ScalarField(grid, 0.0), 0.0, 0};
        EigenOptions eopt;
        eopt.tol = tol;
        const EnergyBreakdown e = j_eps(p, eps, gamma, psi, b, eopt, &pair);
        GammaCheckRow row;
        row.eps = eps;
        row.energy = e.total;
        row.lambda_eps = e.lambda1;
        row.lambda_sharp = sharp.lambda1;
        row.f_eps = e.j;
        row.f_zero = sharp.j;
        row.energy_gap = gamma * e.total - (sharp.perimeter_term + sharp.contact_term);
        row.eigen_gap = e.lambda1 - sharp.lambda1;
        const auto& w = grid->weights();
        double pen = 0.0;
        for (int i = 0; i < grid->size(); ++i)
            pen += w[i] * b.b_eps(eps, p.field()[i]) * pair.w[i] * pair.w[i];
        row.penalty = pen;
        row.l1_distance = lp_distance(phi_eps, chi_f, 1);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fk
