#include "fk/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "fk/errors.hpp"

namespace fk {

namespace {

// Assembled symmetric system: stiffness K (face list + diagonal) against the
// diagonal mass matrix wt.  Inner solves use a direct tridiagonal
// factorization when the coupling pattern allows it, otherwise
// Jacobi-preconditioned CG.
struct System {
    int n = 0;
    std::vector<Face> faces;  // local dof indices; ghost couplings only add to diag
    std::vector<double> wt, b;
    std::vector<double> diag;
    bool tridiag = false;
    std::vector<double> sub;        // sub[i] = off-diagonal (i-1,i), i >= 1
    std::vector<double> fac_d, fac_l;  // LDL' of the tridiagonal

    void finalize() {
        n = static_cast<int>(wt.size());
        diag.assign(n, 0.0);
        for (int i = 0; i < n; ++i) diag[i] = wt[i] * b[i];
        tridiag = true;
        for (const Face& f : faces) {
            diag[f.a] += f.coef;
            if (f.b >= 0) {
                diag[f.b] += f.coef;
                if (std::abs(f.a - f.b) != 1) tridiag = false;
            }
        }
        if (tridiag && n > 0) {
            sub.assign(n, 0.0);
            for (const Face& f : faces)
                if (f.b >= 0) sub[std::max(f.a, f.b)] -= f.coef;
            fac_d.assign(n, 0.0);
            fac_l.assign(n, 0.0);
            fac_d[0] = diag[0];
            for (int i = 1; i < n; ++i) {
                fac_l[i] = sub[i] / fac_d[i - 1];
                fac_d[i] = diag[i] - fac_l[i] * sub[i];
            }
        }
    }

    void applyK(const std::vector<double>& u, std::vector<double>& y) const {
        y.assign(n, 0.0);
        for (int i = 0; i < n; ++i) y[i] = diag[i] * u[i];
        for (const Face& f : faces)
            if (f.b >= 0) {
                y[f.a] -= f.coef * u[f.b];
                y[f.b] -= f.coef * u[f.a];
            }
    }

    // Solve K x = rhs.  `x` carries the initial CG guess.
    void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
        if (tridiag) {
            x.resize(n);
            // forward/back substitution on the LDL' factors
            for (int i = 0; i < n; ++i)
                x[i] = rhs[i] - (i ? fac_l[i] * x[i - 1] : 0.0);
            for (int i = 0; i < n; ++i) x[i] /= fac_d[i];
            for (int i = n - 2; i >= 0; --i) x[i] -= fac_l[i + 1] * x[i + 1];
            return;
        }
        std::vector<double> r(n), z(n), p(n), Ap(n);
        applyK(x, Ap);
        double rhs2 = 0.0;
        for (int i = 0; i < n; ++i) {
            r[i] = rhs[i] - Ap[i];
            rhs2 += rhs[i] * rhs[i];
        }
        if (rhs2 == 0.0) { x.assign(n, 0.0); return; }
        const double target2 = rhs2 * 1e-22;  // relative residual 1e-11
        double rz = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = r[i] / diag[i];
            rz += r[i] * z[i];
        }
        p = z;
        const int maxit = 20 * n + 200;
        for (int it = 0; it < maxit; ++it) {
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) r2 += r[i] * r[i];
            if (r2 <= target2) break;
            applyK(p, Ap);
            double pAp = 0.0;
            for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
            const double alpha = rz / pAp;
            for (int i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * Ap[i];
            }
            double rz_new = 0.0;
            for (int i = 0; i < n; ++i) {
                z[i] = r[i] / diag[i];
                rz_new += r[i] * z[i];
            }
            const double beta = rz_new / rz;
            rz = rz_new;
            for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
    }
};

struct RawPair {
    double lambda;
    std::vector<double> v;
    double residual;
    int iterations;
};

RawPair inverse_power(const System& sys, const EigenOptions& opt) {
    if (!(opt.tol > 0.0) || opt.tol > 1e-4)
        throw ConfigError("eigensolver: tol must lie in (0, 1e-4]");
    const int n = sys.n;
    std::vector<double> u(n, 1.0);
    if (opt.warm_start && static_cast<int>(opt.warm_start->size()) == n)
        u = *opt.warm_start;
    auto mnorm = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += sys.wt[i] * v[i] * v[i];
        return std::sqrt(s);
    };
    double nu = mnorm(u);
    if (!(nu > 0.0)) { u.assign(n, 1.0); nu = mnorm(u); }
    for (double& x : u) x /= nu;

    std::vector<double> rhs(n), v(n), Kv(n);
    double lam = 0.0, res = 0.0;
    int it = 0;
    double lam_prev = -1.0;
    for (it = 1; it <= opt.max_outer; ++it) {
        for (int i = 0; i < n; ++i) rhs[i] = sys.wt[i] * u[i];
        // warm CG start from the previous direction scaled by 1/lambda
        if (lam_prev > 0.0)
            for (int i = 0; i < n; ++i) v[i] = u[i] / lam_prev;
        else
            v.assign(n, 0.0);
        sys.solve(rhs, v);
        const double nv = mnorm(v);
        if (!(nv > 0.0)) throw SolverError("eigensolver: iteration collapsed", 1.0);
        for (double& x : v) x /= nv;
        sys.applyK(v, Kv);
        lam = 0.0;
        for (int i = 0; i < n; ++i) lam += v[i] * Kv[i];
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ri = Kv[i] - lam * sys.wt[i] * v[i];
            r2 += ri * ri / sys.wt[i];
        }
        res = std::sqrt(r2) / lam;
        u = v;
        if (res <= opt.tol) break;
        lam_prev = lam;
    }
    if (res > opt.tol)
        throw SolverError("eigensolver: no convergence after max iterations", res);
    // positive-normalized representative
    double sgn = 0.0;
    for (int i = 0; i < n; ++i) sgn += sys.wt[i] * u[i];
    if (sgn < 0.0)
        for (double& x : u) x = -x;
    for (double& x : u) x = std::max(x, 1e-300);
    return {lam, std::move(u), res, it};
}

}  // namespace

OperatorHandle::OperatorHandle(GridPtr grid, std::vector<double> b_values)
    : grid_(std::move(grid)), b_(std::move(b_values)) {
    if (!grid_) throw ConfigError("OperatorHandle: null grid");
    if (static_cast<int>(b_.size()) != grid_->size())
        throw ConfigError("OperatorHandle: potential sample count mismatch");
    for (double v : b_)
        if (!(v >= 0.0)) throw ConfigError("OperatorHandle: b must be non-negative");
}

void OperatorHandle::apply_stiffness(const std::vector<double>& u,
                                     std::vector<double>& y) const {
    const int n = grid_->size();
    y.assign(n, 0.0);
    const auto& w = grid_->weights();
    for (int i = 0; i < n; ++i) y[i] = w[i] * b_[i] * u[i];
    for (const Face& f : grid_->faces()) {
        if (f.b == kGhost) {
            y[f.a] += f.coef * u[f.a];
        } else {
            const double d = u[f.a] - u[f.b];
            y[f.a] += f.coef * d;
            y[f.b] -= f.coef * d;
        }
    }
}

double OperatorHandle::bilinear(const std::vector<double>& u,
                                const std::vector<double>& v) const {
    std::vector<double> Kv;
    apply_stiffness(v, Kv);
    double s = 0.0;
    for (std::size_t i = 0; i < Kv.size(); ++i) s += u[i] * Kv[i];
    return s;
}

double OperatorHandle::rayleigh(const std::vector<double>& u) const {
    const auto& w = grid_->weights();
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m += w[i] * u[i] * u[i];
    if (!(m > 0.0)) throw ConfigError("rayleigh: zero vector");
    return bilinear(u, u) / m;
}

OperatorHandle assemble(const GridPtr& grid, const PhaseField& phi,
                        const CoefficientFamily& b, double eps) {
    if (phi.field().grid_ptr() != grid) throw ConfigError("assemble: grid mismatch");
    if (!(eps > 0.0)) throw ConfigError("assemble: eps must be positive");
    std::vector<double> bv(grid->size());
    for (int i = 0; i < grid->size(); ++i) bv[i] = b.b_eps(eps, phi.field()[i]);
    return OperatorHandle(grid, std::move(bv));
}

EigenPair principal_eigenpair(const OperatorHandle& op, const EigenOptions& opt) {
    System sys;
    sys.wt = op.grid()->weights();
    sys.b = op.b_values();
    sys.faces = op.grid()->faces();
    sys.finalize();
    RawPair rp = inverse_power(sys, opt);
    return EigenPair{rp.lambda, ScalarField(op.grid(), std::move(rp.v)), rp.residual,
                     rp.iterations};
}

EigenPair principal_eigenpair(const OperatorHandle& op, double tol) {
    EigenOptions opt;
    opt.tol = tol;
    return principal_eigenpair(op, opt);
}

EigenPair sharp_eigenvalue(const GridPtr& grid, const SharpShape& shape, double tol) {
    shape.validate_inside(grid->domain());
    const int n = grid->size();
    const double h = grid->spacing();
    std::vector<int> keep(n, -1);
    std::vector<int> kept;
    const bool radial = grid->kind() == GridKind::Radial;
    for (int i = 0; i < n; ++i) {
        const bool inside = radial ? shape.contains_radial(grid->radii()[i])
                                   : shape.contains(grid->xs()[i], grid->ys()[i]);
        if (inside) {
            keep[i] = static_cast<int>(kept.size());
            kept.push_back(i);
        }
    }
    if (kept.size() < 4)
        throw TrivialSpaceError("sharp_eigenvalue: fewer than 4 interior cells "
                                "(restricted space is trivial, lambda = +inf)");

    System sys;
    sys.wt.reserve(kept.size());
    for (int i : kept) sys.wt.push_back(grid->weights()[i]);
    sys.b.assign(kept.size(), 0.0);

    if (radial) {
        const int N = grid->resolution();
        auto inside_r = [&](double r) { return shape.contains_radial(r); };
        // Find the predicate flip between an inside radius and an outside one.
        auto crossing = [&](double rin, double rout) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (rin + rout);
                (inside_r(mid) ? rin : rout) = mid;
            }
            return 0.5 * (rin + rout);
        };
        auto area = [&](double r) {
            return grid->domain().dim == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
        };
        for (int i = 0; i < N; ++i) {
            if (keep[i] < 0) continue;
            const double ri = grid->radii()[i];
            // outward face
            const double rnext = i + 1 < N ? grid->radii()[i + 1] : grid->domain().radius;
            if (i + 1 < N && keep[i + 1] >= 0) {
                sys.faces.push_back({keep[i], keep[i + 1], area((i + 1) * h) / h});
            } else if (!inside_r(rnext)) {
                const double rc = crossing(ri, rnext);
                const double d = std::max(rc - ri, 0.05 * h);
                sys.faces.push_back({keep[i], kGhost, area(rc) / d});
            }
            // inward face against a removed neighbor (i=0 has the zero-area origin face)
            if (i > 0 && keep[i - 1] < 0) {
                const double rc = crossing(ri, grid->radii()[i - 1]);
                const double d = std::max(ri - rc, 0.05 * h);
                sys.faces.push_back({keep[i], kGhost, area(rc) / d});
            }
        }
    } else {
        const int M = grid->resolution();
        const double R = grid->domain().radius;
        const auto& map = grid->cell_to_dof();
        auto inside_xy = [&](double x, double y) {
            return std::hypot(x, y) < R && shape.contains(x, y);
        };
        auto cut = [&](double x0, double y0, double x1, double y1) {
            // bisect the segment from the inside center to the outside center
            double ax = x0, ay = y0, bx = x1, by = y1;
            for (int it = 0; it < 60; ++it) {
                const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
                if (inside_xy(mx, my)) { ax = mx; ay = my; }
                else { bx = mx; by = my; }
            }
            return std::max(std::hypot(0.5 * (ax + bx) - x0, 0.5 * (ay + by) - y0),
                            0.05 * h);
        };
        auto dof_at = [&](int ix, int iy) -> int {
            if (ix < 0 || iy < 0 || ix >= M || iy >= M) return -1;
            const int d = map[static_cast<std::size_t>(ix) * M + iy];
            return d >= 0 ? keep[d] : -1;
        };
        for (int ix = 0; ix < M; ++ix)
            for (int iy = 0; iy < M; ++iy) {
                const int gd = map[static_cast<std::size_t>(ix) * M + iy];
                if (gd < 0 || keep[gd] < 0) continue;
                const int me = keep[gd];
                const double x = grid->xs()[gd], y = grid->ys()[gd];
                const int dir[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                for (int k = 0; k < 4; ++k) {
                    const int nb = dof_at(ix + dir[k][0], iy + dir[k][1]);
                    if (nb >= 0) {
                        if (k < 2) sys.faces.push_back({me, nb, 1.0});  // own +x/+y faces
                    } else {
                        const double d =
                            cut(x, y, x + dir[k][0] * h, y + dir[k][1] * h);
                        sys.faces.push_back({me, kGhost, h / d});
                    }
                }
            }
    }

    sys.finalize();
    RawPair rp = inverse_power(sys, EigenOptions{tol, 10000, nullptr});
    std::vector<double> full(n, 0.0);
    for (std::size_t k = 0; k < kept.size(); ++k) full[kept[k]] = rp.v[k];
    return EigenPair{rp.lambda, ScalarField(grid, std::move(full)), rp.residual,
                     rp.iterations};
}

}  // namespace fk
