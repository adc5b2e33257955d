#pragma once

#include <limits>

#include "fk/coefficient.hpp"
#include "fk/domain.hpp"
#include "fk/eigen.hpp"
#include "fk/potential.hpp"
#include "fk/shapes.hpp"

namespace fk {

struct EnergyBreakdown {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    double gradient_term = 0.0;   // (eps/2) int |grad phi|^2
    double potential_term = 0.0;  // (1/eps) int psi(phi)
    double total = 0.0;           // E^eps
    double lambda1 = kUnset;
    double j = kUnset;            // J^eps_gamma or J^0_gamma
    double perimeter_term = 0.0;  // gamma c0 P_Omega(E)      (sharp only)
    double contact_term = 0.0;    // gamma c0 trace integral  (sharp only)
    int eigen_iterations = 0;
    double eigen_residual = 0.0;
};

// Ginzburg-Landau energy E^eps(phi).
EnergyBreakdown gl_energy(const PhaseField& phi, double eps, const Potential& psi);

// J^eps_gamma(phi) = lambda_1^{eps,phi} + gamma E^eps(phi).  The converged
// eigenpair is exposed through `out_pair` for callers that need the
// eigenfunction (first variation, penalty integrals).
EnergyBreakdown j_eps(const PhaseField& phi, double eps, double gamma,
                      const Potential& psi, const CoefficientFamily& b,
                      const EigenOptions& opt = {}, EigenPair* out_pair = nullptr);

// L2-gradient of J^eps_gamma at phi (constraints ignored):
//   g_i = (b^eps)'(phi_i) w_i^2 + gamma( -eps Lap_h phi + psi'(phi)/eps )_i
// using the Hellmann-Feynman derivative of the simple principal eigenvalue.
ScalarField first_variation(const PhaseField& phi, double eps, double gamma,
                            const Potential& psi, const CoefficientFamily& b,
                            const EigenPair& pair);

// Sharp-interface functional J^0_gamma(E); lambda1 = +inf when the restricted
// space is trivial.
EnergyBreakdown j_zero(const SharpShape& shape, const GridPtr& grid, double gamma,
                       const Potential& psi, double tol = 1e-8);

// Discrete total variation of Psi(phi) (layer-cake side of the Modica-Mortola
// bound): face-jump form on radial grids, cell-centered isotropic gradient on
// Cartesian grids.
double modica_mortola_tv(const PhaseField& phi, const Potential& psi);

}  // namespace fk
