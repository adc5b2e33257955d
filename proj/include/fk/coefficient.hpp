#pragma once

#include <string>
#include <vector>

namespace fk {

// Interpolation family  b^eps(s) = beta^eps (1-s) / (1 + (beta^eps/c) s)
// with the scale beta^eps = beta_bar * eps^{-kappa_used} and pointwise limit
// b^0(s) = c (1-s)/s  (so b^0(1/2) = c = c_half).  b^0(0) = +infinity.
class CoefficientFamily {
  public:
    CoefficientFamily(int dim, double beta_bar, double kappa_used, double c_half);

    double beta(double eps) const;
    double b_eps(double eps, double s) const;
    // d/ds b^eps(s) = -beta (1 + beta/c) / (1 + (beta/c) s)^2
    double db_eps(double eps, double s) const;
    // +infinity (as an IEEE double) at s = 0; that is the flagged marker.
    double b_zero(double s) const;

    int dim() const { return dim_; }
    double beta_bar() const { return beta_bar_; }
    double kappa_used() const { return kappa_; }
    double c_half() const { return c_; }

    struct Check {
        std::string name;
        bool ok;
        std::string detail;
    };
    // Sampled validation of the structural assumptions on b^eps: range and
    // strict decrease in s, endpoint values, monotonicity in eps, pointwise
    // convergence to b^0, and the growth-schedule admissibility in kappa.
    std::vector<Check> check_assumptions() const;

  private:
    int dim_;
    double beta_bar_, kappa_, c_;
};

}  // namespace fk
