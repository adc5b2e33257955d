#pragma once

#include <optional>
#include <vector>

#include "fk/coefficient.hpp"
#include "fk/domain.hpp"
#include "fk/potential.hpp"
#include "fk/shapes.hpp"

namespace fk {

// Solution of the optimal-profile ODE  eta' = sqrt(2 psi(eta)), eta(0) = 1/2,
// integrated forward and backward and frozen at the endpoint values.
class ProfileSolution {
  public:
    struct TailFit {
        double c = 0.0;     // prefactor
        double rate = 0.0;  // exponential rate
        double residual = 0.0;  // max relative fit deviation
    };

    double eta(double t) const;  // linear interpolation, frozen outside [t0, t1]
    double t_max() const { return t_max_; }
    // finite hitting times, when the trajectory reaches 0 / 1 exactly
    std::optional<double> hit_zero() const { return hit_zero_; }
    std::optional<double> hit_one() const { return hit_one_; }
    std::optional<TailFit> tail_zero() const { return tail_zero_; }
    std::optional<TailFit> tail_one() const { return tail_one_; }
    const std::string& potential_name() const { return name_; }
    double step() const { return dt_; }

  private:
    friend ProfileSolution solve_profile(const Potential& psi, double t_max);
    std::string name_;
    double dt_ = 1e-3, t_max_ = 30.0;
    std::vector<double> fwd_, bwd_;  // samples at k*dt and -k*dt
    std::optional<double> hit_zero_, hit_one_;
    std::optional<TailFit> tail_zero_, tail_one_;
};

ProfileSolution solve_profile(const Potential& psi, double t_max = 30.0);

// Five-branch interpolated profile rho_eps at signed distance t from the
// interface (positive inside the shape):
//   1                                   for t >  2 sqrt(eps)
//   linear between eta(1/sqrt(eps)), 1  on  [sqrt(eps), 2 sqrt(eps)]
//   eta(t/eps)                          for |t| <= sqrt(eps)
//   linear between 0, eta(-1/sqrt(eps)) on  [-2 sqrt(eps), -sqrt(eps)]
//   0                                   for t < -2 sqrt(eps)
double profile_rho(const ProfileSolution& sol, double eps, double t);

// phi_eps(x) = rho_eps(signed distance to the shape boundary); requires the
// shape to keep distance >= 2 sqrt(eps) from the domain boundary so the field
// vanishes there (discrete H^1_0).
ScalarField recovery_sequence(const SharpShape& shape, double eps, const GridPtr& grid,
                              const ProfileSolution& sol);

struct GammaCheckRow {
    double eps = 0.0;
    double energy = 0.0;        // E^eps(phi_eps)
    double f_eps = 0.0;         // lambda^eps + gamma E^eps
    double f_zero = 0.0;        // lambda^0  + gamma c0 (perimeter + contact)
    double lambda_eps = 0.0;
    double lambda_sharp = 0.0;
    double energy_gap = 0.0;    // gamma E^eps - gamma c0 (P + contact)
    double eigen_gap = 0.0;     // lambda^eps - lambda^0
    double penalty = 0.0;       // sum w_i b^eps(phi_i) weig_i^2
    double l1_distance = 0.0;   // ||phi_eps - chi_E||_L1
};

std::vector<GammaCheckRow> gamma_check(const SharpShape& shape,
                                       const std::vector<double>& eps_list,
                                       const GridPtr& grid, double gamma,
                                       const Potential& psi, const CoefficientFamily& b,
                                       double tol = 1e-8);

}  // namespace fk
