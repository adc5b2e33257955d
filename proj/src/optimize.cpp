#include "fk/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "fk/errors.hpp"
#include "fk/profile.hpp"
#include "fk/rearrange.hpp"

namespace fk {

PhaseField project_admissible(const ScalarField& f, double mass) {
    if (!(mass > 0.0) || !(mass < 1.0))
        throw ConfigError("project_admissible: mass must lie in (0,1)");
    const Grid& grid = f.grid();
    const auto& w = grid.weights();
    const auto& bl = grid.boundary_layer();
    const double vol = grid.domain().volume();
    double interior_w = 0.0;
    for (int i = 0; i < f.size(); ++i)
        if (!bl[i]) interior_w += w[i];
    if (mass >= interior_w / vol)
        throw ConfigError("project_admissible: mass infeasible after boundary zeroing");

    auto mean_at = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < f.size(); ++i)
            if (!bl[i]) s += w[i] * std::clamp(f[i] + mu, 0.0, 1.0);
        return s / vol;
    };
    double lo = -1.0, hi = 1.0;
    for (double v : f.values()) {
        lo = std::min(lo, -v - 1.0);
        hi = std::max(hi, 1.0 - v);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mean_at(mid) < mass) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-16 && std::abs(mean_at(0.5 * (lo + hi)) - mass) < 1e-13) break;
    }
    const double mu = 0.5 * (lo + hi);
    if (std::abs(mean_at(mu) - mass) > 1e-10)
        throw ConfigError("project_admissible: bisection failed to reach the target mass");
    std::vector<double> out(f.size());
    for (int i = 0; i < f.size(); ++i)
        out[i] = bl[i] ? 0.0 : std::clamp(f[i] + mu, 0.0, 1.0);
    return PhaseField(ScalarField(f.grid_ptr(), std::move(out)), mass);
}

PhaseField random_admissible_field(const GridPtr& grid, double mass, Rng& rng) {
    const int n = grid->size();
    std::vector<double> g(n, 0.0);
    const double R = grid->domain().radius;
    if (grid->kind() == GridKind::Radial) {
        for (int k = 1; k <= 4; ++k) {
            const double a = rng.uniform(-1.0, 1.0) / k;
            const double c = rng.uniform(-1.0, 1.0) / k;
            for (int i = 0; i < n; ++i) {
                const double t = kPi * k * grid->radii()[i] / R;
                g[i] += a * std::cos(t) + c * std::sin(t);
            }
        }
    } else {
        // up to |k| <= 3 plane waves, 6 of them
        for (int m = 0; m < 6; ++m) {
            int kx = 0, ky = 0;
            while (kx == 0 && ky == 0) {
                kx = static_cast<int>(rng.uniform(0.0, 7.0)) - 3;
                ky = static_cast<int>(rng.uniform(0.0, 7.0)) - 3;
            }
            const double amp = rng.uniform(-1.0, 1.0);
            const double phase = rng.uniform(0.0, 2.0 * kPi);
            for (int i = 0; i < n; ++i)
                g[i] += amp * std::cos(kPi * (kx * grid->xs()[i] + ky * grid->ys()[i]) / R +
                                       phase);
        }
    }
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : g) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(std::max(var / n, 1e-30));
    for (double& v : g) v = 0.5 + 0.25 * (v - mean) / sd;
    return project_admissible(ScalarField(grid, std::move(g)), mass);
}

namespace {

ScalarField initial_field(const OptimizerConfig& cfg, const GridPtr& grid) {
    const double R = grid->domain().radius;
    const int n = grid->size();
    std::vector<double> v(n, 0.0);
    auto bump = [](double s) { return s < 1.0 ? std::pow(std::cos(0.5 * kPi * s), 2) : 0.0; };
    switch (cfg.init) {
        case InitField::RadialBump:
            for (int i = 0; i < n; ++i) v[i] = bump(grid->radii()[i] / (0.7 * R));
            break;
        case InitField::OffsetBump: {
            if (grid->kind() != GridKind::Cartesian)
                throw ConfigError("offset-bump initialization needs a cartesian grid");
            const double cx = 0.3 * R, cy = 0.0, rad = 0.45 * R;
            for (int i = 0; i < n; ++i)
                v[i] = bump(std::hypot(grid->xs()[i] - cx, grid->ys()[i] - cy) / rad);
            break;
        }
        case InitField::SeededNoise: {
            Rng rng(cfg.seed);
            return random_admissible_field(grid, cfg.mass, rng).field();
        }
    }
    return ScalarField(grid, std::move(v));
}

double weighted_norm(const Grid& grid, const std::vector<double>& a,
                     const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += grid.weights()[i] * d * d;
    }
    return std::sqrt(s);
}

}  // namespace

MinimizeResult minimize(const OptimizerConfig& cfg, const GridPtr& grid,
                        const Potential& psi, const CoefficientFamily& b,
                        const PhaseField* start) {
    if (!(cfg.eps > 0.0) || !(cfg.gamma > 0.0)) throw ConfigError("minimize: eps, gamma > 0");
    const double beta = b.beta(cfg.eps);
    const double t_ref = cfg.initial_step > 0.0 ? cfg.initial_step : 1.0 / beta;

    PhaseField phi = start ? *start
                           : project_admissible(initial_field(cfg, grid), cfg.mass);
    RearrangementPlan plan(grid);
    const double vol = grid->domain().volume();

    OptimizerTrace trace;
    EigenOptions eopt;
    eopt.tol = cfg.eigen_tol;
    std::vector<double> warm;

    auto eval = [&](const PhaseField& p, EigenPair* pair_out) {
        if (!warm.empty()) eopt.warm_start = &warm;
        EnergyBreakdown e = j_eps(p, cfg.eps, cfg.gamma, psi, b, eopt, pair_out);
        return e;
    };

    EigenPair pair{0.0, ScalarField(grid, 0.0), 0.0, 0};
    EnergyBreakdown cur = eval(phi, &pair);
    warm = pair.w.values();
    double step = t_ref;

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        // Periodically try the rearranged iterate: the rearrangement cannot
        // raise J beyond the small discrete slack on the eigenvalue and on
        // the Ginzburg-Landau energy, and accepting it removes the nearly
        // flat translation mode from the descent path.
        if (cfg.symmetrize_every > 0 && iter > 0 && iter % cfg.symmetrize_every == 0) {
            PhaseField sym = project_admissible(plan.apply(phi.field()), cfg.mass);
            const double dist = lp_distance(phi.field(), sym.field(), 1) / vol;
            if (dist > 1e-14) {
                EigenPair sym_pair{0.0, ScalarField(grid, 0.0), 0.0, 0};
                EnergyBreakdown se = eval(sym, &sym_pair);
                const double slack =
                    1e-3 * std::abs(cur.lambda1) + 1e-2 * cfg.gamma * cur.total;
                if (se.j <= cur.j + slack) {
                    phi = std::move(sym);
                    cur = se;
                    pair = std::move(sym_pair);
                    warm = pair.w.values();
                }
            }
        }

        const ScalarField g = first_variation(phi, cfg.eps, cfg.gamma, psi, b, pair);

        // reference projected gradient at the fixed step t_ref
        std::vector<double> probe(grid->size());
        for (int i = 0; i < grid->size(); ++i) probe[i] = phi.field()[i] - t_ref * g[i];
        const PhaseField ref = project_admissible(ScalarField(grid, probe), cfg.mass);
        const double pg = weighted_norm(*grid, phi.field().values(), ref.field().values()) / t_ref;

        IterationRecord rec;
        rec.iter = iter;
        rec.j = cur.j;
        rec.lambda1 = cur.lambda1;
        rec.energy = cur.total;
        rec.step = step;
        rec.pg_norm = pg;
        rec.asymmetry = lp_distance(phi.field(), plan.apply(phi.field()), 1) / vol;
        trace.records.push_back(rec);

        if (pg <= cfg.tol) {
            trace.converged = true;
            trace.message = "projected-gradient norm below tolerance";
            break;
        }

        // Armijo backtracking on the proximal decrease condition
        double t = std::min(step * 2.0, t_ref * 1e6);
        bool accepted = false;
        while (t > 1e-13 * t_ref) {
            for (int i = 0; i < grid->size(); ++i) probe[i] = phi.field()[i] - t * g[i];
            PhaseField cand = project_admissible(ScalarField(grid, probe), cfg.mass);
            const double dn = weighted_norm(*grid, cand.field().values(), phi.field().values());
            if (dn * dn < 1e-28) break;  // projection returned (numerically) phi itself
            EigenPair cand_pair{0.0, ScalarField(grid, 0.0), 0.0, 0};
            EnergyBreakdown ce = eval(cand, &cand_pair);
            if (ce.j <= cur.j - cfg.armijo_c / t * dn * dn) {
                phi = std::move(cand);
                cur = ce;
                pair = std::move(cand_pair);
                warm = pair.w.values();
                step = t;
                accepted = true;
                break;
            }
            t *= cfg.backtrack;
        }
        if (!accepted) {
            trace.converged = true;
            trace.message = "no descent direction at machine step; stationary";
            break;
        }
    }
    if (!trace.converged)
        trace.message = "max iterations reached; best iterate returned";
    return MinimizeResult{std::move(phi), std::move(trace), std::move(pair)};
}

CertificationReport certify_minimizer(const PhaseField& phi, const EigenPair& pair,
                                      double eps, double gamma, double delta,
                                      const Potential& psi, double calibrated_c) {
    CertificationReport rep;
    const double vol = phi.grid().domain().volume();
    RearrangementPlan plan(phi.field().grid_ptr());
    rep.asymmetry = lp_distance(phi.field(), plan.apply(phi.field()), 1) / vol;
    rep.eigen_asymmetry = lp_distance(pair.w, plan.apply(pair.w), 1) / vol;
    rep.interface = interface_measure(phi, delta);
    rep.calibrated_c = calibrated_c;
    rep.bound = calibrated_c * eps / (psi.alpha_delta(delta) * gamma);
    rep.interface_ok = rep.interface <= rep.bound;
    return rep;
}

double calibrate_interface_constant(const GridPtr& grid, const Potential& psi,
                                    const CoefficientFamily& b, double gamma,
                                    double mass, const std::vector<double>& eps_list) {
    const BallDomain& dom = grid->domain();
    const double r = dom.dim == 2 ? dom.radius * std::sqrt(mass)
                                  : dom.radius * std::cbrt(mass);
    const SharpShape ball = SharpShape::ball(r);
    const ProfileSolution sol = solve_profile(psi);
    double C = 0.0;
    bool any = false;
    for (double eps : eps_list) {
        // recovery fields need clearance 2 sqrt(eps); entries that cannot fit
        // around the mass-m ball are skipped
        if (dom.radius - r < 2.0 * std::sqrt(eps)) continue;
        const ScalarField phi_eps = recovery_sequence(ball, eps, grid, sol);
        const PhaseField p(phi_eps, weighted_mean(phi_eps));
        const EnergyBreakdown e = j_eps(p, eps, gamma, psi, b);
        C = std::max(C, e.j);
        any = true;
    }
    if (!any)
        throw ConfigError(
            "calibrate_interface_constant: no eps in the list admits a recovery "
            "field around the mass-m ball (need R - r >= 2 sqrt(eps))");
    return C;
}

}  // namespace fk
