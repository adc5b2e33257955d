#include "fk/objective.hpp"

#include <cmath>

#include "fk/errors.hpp"

namespace fk {

EnergyBreakdown gl_energy(const PhaseField& phi, double eps, const Potential& psi) {
    if (!(eps > 0.0)) throw ConfigError("gl_energy: eps must be positive");
    EnergyBreakdown e;
    e.gradient_term = 0.5 * eps * dirichlet_energy(phi.field());
    const auto& w = phi.grid().weights();
    double pot = 0.0;
    for (int i = 0; i < phi.field().size(); ++i)
        pot += w[i] * psi.psi(std::clamp(phi.field()[i], 0.0, 1.0));
    e.potential_term = pot / eps;
    e.total = e.gradient_term + e.potential_term;
    return e;
}

EnergyBreakdown j_eps(const PhaseField& phi, double eps, double gamma,
                      const Potential& psi, const CoefficientFamily& b,
                      const EigenOptions& opt, EigenPair* out_pair) {
    if (!(gamma >= 0.0)) throw ConfigError("j_eps: gamma must be non-negative");
    EnergyBreakdown e = gl_energy(phi, eps, psi);
    EigenPair pair = principal_eigenpair(assemble(phi.field().grid_ptr(), phi, b, eps), opt);
    e.lambda1 = pair.lambda;
    e.eigen_iterations = pair.iterations;
    e.eigen_residual = pair.residual;
    e.j = pair.lambda + gamma * e.total;
    if (out_pair) *out_pair = std::move(pair);
    return e;
}

ScalarField first_variation(const PhaseField& phi, double eps, double gamma,
                            const Potential& psi, const CoefficientFamily& b,
                            const EigenPair& pair) {
    const GridPtr& grid = phi.field().grid_ptr();
    if (pair.w.grid_ptr() != grid) throw ConfigError("first_variation: grid mismatch");
    const int n = grid->size();
    const auto& wt = grid->weights();
    // stencil part: (L phi)_i = sum_f c_f (phi_i - phi_other), ghost value 0
    std::vector<double> lap(n, 0.0);
    for (const Face& f : grid->faces()) {
        if (f.b == kGhost) {
            lap[f.a] += f.coef * phi.field()[f.a];
        } else {
            const double d = phi.field()[f.a] - phi.field()[f.b];
            lap[f.a] += f.coef * d;
            lap[f.b] -= f.coef * d;
        }
    }
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double s = std::clamp(phi.field()[i], 0.0, 1.0);
        g[i] = b.db_eps(eps, s) * pair.w[i] * pair.w[i] +
               gamma * (eps * lap[i] / wt[i] + psi.dpsi(s) / eps);
    }
    return ScalarField(grid, std::move(g));
}

EnergyBreakdown j_zero(const SharpShape& shape, const GridPtr& grid, double gamma,
                       const Potential& psi, double tol) {
    if (!(gamma > 0.0)) throw ConfigError("j_zero: gamma must be positive");
    EnergyBreakdown e;
    const double c0 = psi.c0();
    e.perimeter_term = gamma * c0 * shape.perimeter(grid->domain());
    e.contact_term = gamma * c0 * shape.boundary_contact(grid->domain());
    try {
        EigenPair pair = sharp_eigenvalue(grid, shape, tol);
        e.lambda1 = pair.lambda;
        e.eigen_iterations = pair.iterations;
        e.eigen_residual = pair.residual;
    } catch (const TrivialSpaceError&) {
        e.lambda1 = std::numeric_limits<double>::infinity();
    }
    e.j = e.lambda1 + e.perimeter_term + e.contact_term;
    return e;
}

double modica_mortola_tv(const PhaseField& phi, const Potential& psi) {
    const Grid& grid = phi.grid();
    // tabulate Psi once; per-cell quadrature would dominate the runtime
    const int nt = 4096;
    std::vector<double> table(nt + 1, 0.0);
    auto root = [&](double s) { return std::sqrt(2.0 * psi.psi(s)); };
    for (int k = 0; k < nt; ++k) {
        const double a = static_cast<double>(k) / nt, dh = 1.0 / nt;
        // 2-panel Simpson per subinterval, accumulated
        table[k + 1] = table[k] + dh / 6.0 * (root(a) + 4.0 * root(a + 0.5 * dh) + root(a + dh));
    }
    auto Psi = [&](double s) {
        const double x = std::clamp(s, 0.0, 1.0) * nt;
        const int k = std::min(static_cast<int>(x), nt - 1);
        return table[k] + (x - k) * (table[k + 1] - table[k]);
    };
    if (grid.kind() == GridKind::Radial) {
        double tv = 0.0;
        const double h = grid.spacing();
        for (const Face& f : grid.faces()) {
            const double other = f.b == kGhost ? 0.0 : Psi(phi.field()[f.b]);
            tv += f.coef * h * std::abs(Psi(phi.field()[f.a]) - other);
        }
        return tv;
    }
    // Cartesian: isotropic cell-centered gradient magnitude of Psi(phi);
    // missing neighbors count as the ghost value Psi(0)=0 at lattice distance h.
    const int M = grid.resolution();
    const double h = grid.spacing();
    const auto& map = grid.cell_to_dof();
    std::vector<double> G(grid.size());
    for (int i = 0; i < grid.size(); ++i) G[i] = Psi(phi.field()[i]);
    auto at = [&](int ix, int iy) -> double {
        if (ix < 0 || iy < 0 || ix >= M || iy >= M) return 0.0;
        const int d = map[static_cast<std::size_t>(ix) * M + iy];
        return d >= 0 ? G[d] : 0.0;
    };
    double tv = 0.0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy) {
            const int d = map[static_cast<std::size_t>(ix) * M + iy];
            if (d < 0) continue;
            const double gx = (at(ix + 1, iy) - at(ix - 1, iy)) / (2.0 * h);
            const double gy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2.0 * h);
            tv += grid.weights()[d] * std::hypot(gx, gy);
        }
    return tv;
}

}  // namespace fk
