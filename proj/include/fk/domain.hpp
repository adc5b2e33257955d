#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace fk {

inline constexpr double kPi = 3.14159265358979323846;

// Design domain: the open ball B_R(0) in dimension 2 or 3.
struct BallDomain {
    int dim;
    double radius;

    BallDomain(int dim_, double radius_);
    double volume() const;
    double boundary_measure() const;
};

enum class GridKind { Radial, Cartesian };

// One coupling in the discrete Dirichlet form.  `b == kGhost` couples dof `a`
// to an implicit zero outside the domain (or outside the retained dof set).
// The bilinear form is  a(u,v) = sum_f coef * (u_a - u_b)(v_a - v_b)  with the
// ghost value fixed to 0.
struct Face {
    int a;
    int b;
    double coef;
};
inline constexpr int kGhost = -1;

// Discretization of a BallDomain, either radial (cell-centered shells,
// dimension 2 or 3) or Cartesian (2D masked lattice of square cells).
//
// Radial: nodes r_i = (i+1/2)h, h = R/N; weights are exact shell volumes;
// conservative face coefficients A(r_face)/dist with A the sphere area.
// Cartesian: cell centers with |x| < R; unit face coefficients between
// neighbors and cut-distance coefficients h/d against the circle, so the
// Dirichlet condition is imposed at the true boundary (Shortley-Weller in
// energy form, kept symmetric).
class Grid {
  public:
    static std::shared_ptr<const Grid> radial(const BallDomain& dom, int node_count);
    static std::shared_ptr<const Grid> cartesian(const BallDomain& dom, int cells_per_axis);

    GridKind kind() const { return kind_; }
    const BallDomain& domain() const { return domain_; }
    int resolution() const { return resolution_; }   // N or M
    double spacing() const { return h_; }
    int size() const { return static_cast<int>(weights_.size()); }

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& xs() const { return xs_; }  // Cartesian only
    const std::vector<double>& ys() const { return ys_; }  // Cartesian only
    const std::vector<Face>& faces() const { return faces_; }
    // 1 where a Dirichlet zero is imposed on admissible phase fields:
    // the outermost radial node, or masked cells adjacent to the mask edge.
    const std::vector<std::uint8_t>& boundary_layer() const { return boundary_; }

    bool equal_weights() const { return kind_ == GridKind::Cartesian; }
    double total_weight() const { return total_weight_; }

    // Cartesian: row-major (ix*M + iy) -> dof index, or -1 outside the mask.
    const std::vector<int>& cell_to_dof() const { return cell_to_dof_; }

  private:
    Grid() : domain_(2, 1.0) {}
    GridKind kind_ = GridKind::Radial;
    BallDomain domain_;
    int resolution_ = 0;
    double h_ = 0.0;
    double total_weight_ = 0.0;
    std::vector<double> weights_, radii_, xs_, ys_;
    std::vector<Face> faces_;
    std::vector<std::uint8_t> boundary_;
    std::vector<int> cell_to_dof_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Immutable grid function.
class ScalarField {
  public:
    ScalarField(GridPtr grid, std::vector<double> values);
    // Constant field.
    ScalarField(GridPtr grid, double value);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[i]; }
    int size() const { return static_cast<int>(values_.size()); }

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

// (1/|Omega|) * sum_i w_i f_i   (analytic |Omega|, not the mask sum)
double weighted_mean(const ScalarField& f);
// sum_i w_i f_i
double weighted_integral(const ScalarField& f);
// weighted L^p distance, p in {1,2}
double lp_distance(const ScalarField& f, const ScalarField& g, int p);

// Discrete Dirichlet energy  sum_f c_f (f_a - f_b)^2  with ghost value 0.
// include_ghost=false drops the couplings against the implicit boundary
// zeros (needed for fields without zero trace).
double dirichlet_energy(const ScalarField& f, bool include_ghost = true);

// Admissible control: values in [0,1], prescribed weighted mean, zeros on the
// boundary layer.  Constructor validates all three and throws ConfigError.
class PhaseField {
  public:
    PhaseField(ScalarField field, double mass);

    const ScalarField& field() const { return field_; }
    const Grid& grid() const { return field_.grid(); }
    double mass() const { return mass_; }

  private:
    ScalarField field_;
    double mass_;
};

// sum of weights over cells with delta <= phi_i <= 1-delta
double interface_measure(const PhaseField& phi, double delta);

// CSV serialization, header `index,r_or_x,y,value` (radial omits y).
void write_csv(std::ostream& os, const ScalarField& f);
ScalarField read_csv(std::istream& is, GridPtr grid);

}  // namespace fk
