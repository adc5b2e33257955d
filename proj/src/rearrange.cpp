#include "fk/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fk/errors.hpp"

namespace fk {

RearrangementPlan::RearrangementPlan(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw ConfigError("RearrangementPlan: null grid");
    order_.resize(grid_->size());
    std::iota(order_.begin(), order_.end(), 0);
    const auto& r = grid_->radii();
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return r[a] < r[b]; });
    exact_ = grid_->equal_weights();
}

ScalarField RearrangementPlan::apply(const ScalarField& f) const {
    if (f.grid_ptr() != grid_) throw ConfigError("rearrange: grid mismatch");
    for (double v : f.values())
        if (v < 0.0) throw ConfigError("rearrange: negative values not allowed");
    const int n = f.size();
    std::vector<double> out(n);
    if (exact_) {
        std::vector<double> sorted = f.values();
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (int k = 0; k < n; ++k) out[order_[k]] = sorted[k];
        return ScalarField(grid_, std::move(out));
    }
    // Layer-cake variant for unequal weights: build the decreasing step
    // function of the distribution of f on [0, sum w] and average it over each
    // target cell's measure slot.
    const auto& w = grid_->weights();
    std::vector<int> by_val(n);
    std::iota(by_val.begin(), by_val.end(), 0);
    std::stable_sort(by_val.begin(), by_val.end(),
                     [&](int a, int b) { return f[a] > f[b]; });
    std::vector<double> cum(n + 1, 0.0);  // breakpoints of the step function
    for (int k = 0; k < n; ++k) cum[k + 1] = cum[k] + w[by_val[k]];
    double pos = 0.0;
    int seg = 0;
    for (int k = 0; k < n; ++k) {
        const int cell = order_[k];
        double need = w[cell], acc = 0.0;
        while (need > 0.0 && seg < n) {
            const double take = std::min(need, cum[seg + 1] - pos);
            acc += take * f[by_val[seg]];
            pos += take;
            need -= take;
            if (pos >= cum[seg + 1] - 1e-15 * cum[n]) ++seg;
        }
        out[cell] = acc / w[cell];
    }
    return ScalarField(grid_, std::move(out));
}

ScalarField rearrange(const ScalarField& f) {
    return RearrangementPlan(f.grid_ptr()).apply(f);
}

namespace {
void require_equal_weights(const ScalarField& f, const char* what) {
    if (!f.grid().equal_weights())
        throw ConfigError(std::string(what) + ": exact check needs equal cell weights");
}
}  // namespace

RearrangeReport check_norm_preservation(const ScalarField& f, int p) {
    require_equal_weights(f, "check_norm_preservation");
    const ScalarField g = rearrange(f);
    auto norm = [&](const ScalarField& u) {
        if (p <= 0) {
            double m = 0.0;
            for (double v : u.values()) m = std::max(m, v);
            return m;
        }
        const double w = u.grid().weights()[0];
        double s = 0.0;
        for (double v : u.values()) s += (p == 1 ? v : v * v);
        return p == 1 ? s * w : std::sqrt(s * w);
    };
    RearrangeReport r;
    r.lhs = norm(f);
    r.rhs = norm(g);
    r.ok = std::abs(r.lhs - r.rhs) <= 1e-13 * std::max(1.0, std::abs(r.lhs));
    return r;
}

RearrangeReport check_hardy_littlewood(const ScalarField& f, const ScalarField& g) {
    require_equal_weights(f, "check_hardy_littlewood");
    if (f.grid_ptr() != g.grid_ptr()) throw ConfigError("hardy_littlewood: grid mismatch");
    const ScalarField fs = rearrange(f), gs = rearrange(g);
    RearrangeReport r;
    for (int i = 0; i < f.size(); ++i) {
        r.lhs += f[i] * g[i];
        r.rhs += fs[i] * gs[i];
    }
    r.ok = r.lhs <= r.rhs + 1e-12;
    return r;
}

RearrangeReport check_nonexpansivity(const ScalarField& f, const ScalarField& g,
                                     const std::function<double(double)>& F) {
    require_equal_weights(f, "check_nonexpansivity");
    if (f.grid_ptr() != g.grid_ptr()) throw ConfigError("nonexpansivity: grid mismatch");
    const ScalarField fs = rearrange(f), gs = rearrange(g);
    RearrangeReport r;
    for (int i = 0; i < f.size(); ++i) {
        r.lhs += F(fs[i] - gs[i]);
        r.rhs += F(f[i] - g[i]);
    }
    r.ok = r.lhs <= r.rhs + 1e-12;
    return r;
}

PolyaSzegoReport check_polya_szego(const ScalarField& f) {
    const auto& bl = f.grid().boundary_layer();
    for (int i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0) throw ConfigError("polya_szego: negative values");
        if (bl[i] && std::abs(f[i]) > 1e-12)
            throw ConfigError("polya_szego: nonzero boundary layer (needs zero trace)");
    }
    PolyaSzegoReport r;
    r.energy = dirichlet_energy(f);
    r.energy_rearranged = dirichlet_energy(rearrange(f));
    r.gap = r.energy - r.energy_rearranged;
    r.slack = 1e-2 * r.energy;
    r.ok = r.gap >= -r.slack;
    return r;
}

}  // namespace fk
