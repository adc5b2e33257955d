#pragma once

#include <functional>

#include "fk/domain.hpp"

namespace fk {

// Discrete symmetric-decreasing (Schwarz) rearrangement.
//
// Cells are ordered by increasing distance from the origin, ties broken by
// cell index.  On equal-weight grids the rearrangement sorts the value
// multiset decreasingly along that order and is exact (a permutation of the
// values).  On radial grids with unequal shell weights the plan falls back to
// a layer-cake variant: the decreasing distribution function of (value,
// weight) pairs is averaged over each target cell's measure interval.  That
// variant preserves the integral exactly and maps radially non-increasing
// fields to themselves, but pointwise claims are only approximate.
class RearrangementPlan {
  public:
    explicit RearrangementPlan(GridPtr grid);

    // order()[k] = dof index of the k-th closest cell to the origin.
    const std::vector<int>& order() const { return order_; }
    bool exact() const { return exact_; }

    ScalarField apply(const ScalarField& f) const;  // requires f >= 0

  private:
    GridPtr grid_;
    std::vector<int> order_;
    bool exact_;
};

// One-off convenience wrapper.
ScalarField rearrange(const ScalarField& f);

struct RearrangeReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

// ||f*||_p == ||f||_p (p in {1,2}, or p<=0 for the sup norm); exact on
// equal-weight grids.
RearrangeReport check_norm_preservation(const ScalarField& f, int p);
// sum f g <= sum f* g*
RearrangeReport check_hardy_littlewood(const ScalarField& f, const ScalarField& g);
// sum F(f* - g*) <= sum F(f - g) for convex F with F(0)=0
RearrangeReport check_nonexpansivity(const ScalarField& f, const ScalarField& g,
                                     const std::function<double(double)>& F);

struct PolyaSzegoReport {
    double energy = 0.0;             // Dirichlet energy of f
    double energy_rearranged = 0.0;  // Dirichlet energy of f*
    double gap = 0.0;                // energy - energy_rearranged
    double slack = 0.0;              // allowed negative part (discretization)
    bool ok = false;
};

// Dirichlet energy comparison int |grad f*|^2 <= int |grad f|^2, asserted up
// to the discretization slack 1e-2 * energy(f); requires zero boundary layer.
PolyaSzegoReport check_polya_szego(const ScalarField& f);

}  // namespace fk
