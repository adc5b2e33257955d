#include "fk/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fk/errors.hpp"

namespace fk {

BallDomain::BallDomain(int dim_, double radius_) : dim(dim_), radius(radius_) {
    if (dim != 2 && dim != 3) throw ConfigError("BallDomain: dimension must be 2 or 3");
    if (!(radius > 0.0)) throw ConfigError("BallDomain: radius must be positive");
}

double BallDomain::volume() const {
    return dim == 2 ? kPi * radius * radius : (4.0 / 3.0) * kPi * radius * radius * radius;
}

double BallDomain::boundary_measure() const {
    return dim == 2 ? 2.0 * kPi * radius : 4.0 * kPi * radius * radius;
}

namespace {

double sphere_area(int dim, double r) {
    return dim == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
}

// Exact volume of the shell [ra, rb].
double shell_volume(int dim, double ra, double rb) {
    if (dim == 2) return kPi * (rb * rb - ra * ra);
    return (4.0 / 3.0) * kPi * (rb * rb * rb - ra * ra * ra);
}

}  // namespace

std::shared_ptr<const Grid> Grid::radial(const BallDomain& dom, int node_count) {
    if (node_count < 8) throw ConfigError("radial grid too coarse: need N >= 8");
    auto g = std::shared_ptr<Grid>(new Grid());
    g->kind_ = GridKind::Radial;
    g->domain_ = dom;
    g->resolution_ = node_count;
    const double h = dom.radius / node_count;
    g->h_ = h;
    g->weights_.resize(node_count);
    g->radii_.resize(node_count);
    g->boundary_.assign(node_count, 0);
    for (int i = 0; i < node_count; ++i) {
        g->radii_[i] = (i + 0.5) * h;
        g->weights_[i] = shell_volume(dom.dim, i * h, (i + 1) * h);
    }
    g->boundary_[node_count - 1] = 1;
    // Interior faces at r = ih (the r=0 face has zero area and is dropped);
    // the wall face sits exactly at r = R, half a cell from the last node.
    for (int i = 1; i < node_count; ++i)
        g->faces_.push_back({i - 1, i, sphere_area(dom.dim, i * h) / h});
    g->faces_.push_back({node_count - 1, kGhost, sphere_area(dom.dim, dom.radius) / (0.5 * h)});
    double tw = 0.0;
    for (double w : g->weights_) tw += w;
    g->total_weight_ = tw;
    return g;
}

std::shared_ptr<const Grid> Grid::cartesian(const BallDomain& dom, int cells_per_axis) {
    if (dom.dim != 2) throw ConfigError("cartesian grids support dimension 2 only");
    if (cells_per_axis < 16) throw ConfigError("cartesian grid too coarse: need M >= 16");
    auto g = std::shared_ptr<Grid>(new Grid());
    g->kind_ = GridKind::Cartesian;
    g->domain_ = dom;
    g->resolution_ = cells_per_axis;
    const int M = cells_per_axis;
    const double R = dom.radius;
    const double h = 2.0 * R / M;
    g->h_ = h;
    g->cell_to_dof_.assign(static_cast<std::size_t>(M) * M, -1);
    auto center = [&](int k) { return -R + (k + 0.5) * h; };
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy) {
            const double x = center(ix), y = center(iy);
            if (std::hypot(x, y) < R) {
                g->cell_to_dof_[static_cast<std::size_t>(ix) * M + iy] = g->size();
                g->xs_.push_back(x);
                g->ys_.push_back(y);
                g->radii_.push_back(std::hypot(x, y));
                g->weights_.push_back(h * h);
            }
        }
    g->boundary_.assign(g->size(), 0);

    // Distance along +/-axis from an interior center to the circle |x| = R,
    // clamped away from zero so cut faces stay bounded.
    auto cut = [&](double along, double across) {
        const double d = std::sqrt(std::max(R * R - across * across, 0.0)) - std::abs(along);
        return std::max(d, 0.05 * h);
    };
    auto dof = [&](int ix, int iy) -> int {
        if (ix < 0 || iy < 0 || ix >= M || iy >= M) return -1;
        return g->cell_to_dof_[static_cast<std::size_t>(ix) * M + iy];
    };
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy) {
            const int i = dof(ix, iy);
            if (i < 0) continue;
            const double x = g->xs_[i], y = g->ys_[i];
            // +x and +y faces owned by this cell; boundary faces in any direction.
            const int xp = dof(ix + 1, iy), yp = dof(ix, iy + 1);
            if (xp >= 0) g->faces_.push_back({i, xp, 1.0});
            else g->faces_.push_back({i, kGhost, h / cut(x, y)});
            if (yp >= 0) g->faces_.push_back({i, yp, 1.0});
            else g->faces_.push_back({i, kGhost, h / cut(y, x)});
            if (dof(ix - 1, iy) < 0) g->faces_.push_back({i, kGhost, h / cut(x, y)});
            if (dof(ix, iy - 1) < 0) g->faces_.push_back({i, kGhost, h / cut(y, x)});
            if (xp < 0 || yp < 0 || dof(ix - 1, iy) < 0 || dof(ix, iy - 1) < 0)
                g->boundary_[i] = 1;
        }
    double tw = 0.0;
    for (double w : g->weights_) tw += w;
    g->total_weight_ = tw;
    const double rel = std::abs(tw - dom.volume()) / dom.volume();
    if (rel > 4.0 * h / R)
        throw ConfigError("cartesian mask area error exceeds bound");
    return g;
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw ConfigError("ScalarField: null grid");
    if (static_cast<int>(values_.size()) != grid_->size())
        throw ConfigError("ScalarField: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw ConfigError("ScalarField: non-finite value");
}

ScalarField::ScalarField(GridPtr grid, double value)
    : ScalarField(grid, std::vector<double>(grid ? grid->size() : 0, value)) {}

double weighted_integral(const ScalarField& f) {
    const auto& w = f.grid().weights();
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += w[i] * f[i];
    return s;
}

double weighted_mean(const ScalarField& f) {
    return weighted_integral(f) / f.grid().domain().volume();
}

double lp_distance(const ScalarField& f, const ScalarField& g, int p) {
    if (f.grid_ptr() != g.grid_ptr()) throw ConfigError("lp_distance: grid mismatch");
    const auto& w = f.grid().weights();
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        const double d = std::abs(f[i] - g[i]);
        s += w[i] * (p == 1 ? d : d * d);
    }
    return p == 1 ? s : std::sqrt(s);
}

double dirichlet_energy(const ScalarField& f, bool include_ghost) {
    double s = 0.0;
    for (const Face& fc : f.grid().faces()) {
        if (fc.b == kGhost) {
            if (include_ghost) s += fc.coef * f[fc.a] * f[fc.a];
        } else {
            const double d = f[fc.a] - f[fc.b];
            s += fc.coef * d * d;
        }
    }
    return s;
}

PhaseField::PhaseField(ScalarField field, double mass)
    : field_(std::move(field)), mass_(mass) {
    if (!(mass_ > 0.0) || !(mass_ < 1.0))
        throw ConfigError("PhaseField: mass must lie in (0,1)");
    const auto& bl = field_.grid().boundary_layer();
    for (int i = 0; i < field_.size(); ++i) {
        const double v = field_[i];
        if (v < -1e-12 || v > 1.0 + 1e-12)
            throw ConfigError("PhaseField: box constraint violated");
        if (bl[i] && std::abs(v) > 1e-12)
            throw ConfigError("PhaseField: nonzero value on the boundary layer");
    }
    const double mean = weighted_mean(field_);
    if (std::abs(mean - mass_) > 1e-10)
        throw ConfigError("PhaseField: weighted mean does not match mass");
}

double interface_measure(const PhaseField& phi, double delta) {
    if (!(delta > 0.0) || !(delta < 0.5))
        throw ConfigError("interface_measure: delta must lie in (0,1/2)");
    const auto& f = phi.field();
    const auto& w = f.grid().weights();
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i)
        if (f[i] >= delta && f[i] <= 1.0 - delta) s += w[i];
    return s;
}

void write_csv(std::ostream& os, const ScalarField& f) {
    const bool radial = f.grid().kind() == GridKind::Radial;
    os << (radial ? "index,r_or_x,value\n" : "index,r_or_x,y,value\n");
    char buf[128];
    for (int i = 0; i < f.size(); ++i) {
        if (radial)
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, f.grid().radii()[i], f[i]);
        else
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", i, f.grid().xs()[i],
                          f.grid().ys()[i], f[i]);
        os << buf;
    }
}

ScalarField read_csv(std::istream& is, GridPtr grid) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("csv: empty input");
    std::vector<double> vals;
    vals.reserve(grid->size());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto pos = line.find_last_of(',');
        if (pos == std::string::npos) throw ConfigError("csv: malformed row");
        vals.push_back(std::stod(line.substr(pos + 1)));
    }
    return ScalarField(std::move(grid), std::move(vals));
}

}  // namespace fk
