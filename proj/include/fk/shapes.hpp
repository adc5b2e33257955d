#pragma once

#include <string>
#include <vector>

#include "fk/domain.hpp"

namespace fk {

// Parametric finite-perimeter set E, centered at the origin / axis-aligned:
// ball, annulus, ellipse, rectangle, or a finite union of disjoint members.
// Volume, relative perimeter in Omega and the boundary-contact measure
// H^{n-1}(boundary(Omega) intersect closure(E)) are analytic; signed distance
// to the boundary of E (positive inside) is available for all descriptors.
class SharpShape {
  public:
    static SharpShape ball(double r);
    static SharpShape annulus(double r_in, double r_out);
    static SharpShape ellipse(double a, double b);      // semi-axes
    static SharpShape rectangle(double a, double b);    // full side lengths
    static SharpShape disjoint_union(std::vector<SharpShape> members);
    // "ball:0.5", "annulus:0.5,1", "ellipse:1.4,0.7", "rectangle:1.7,1.7",
    // unions joined with ';'.
    static SharpShape parse(const std::string& text);

    double volume(int dim) const;
    double perimeter(const BallDomain& dom) const;         // relative perimeter
    double boundary_contact(const BallDomain& dom) const;  // trace measure

    bool contains(double x, double y) const;
    bool contains_radial(double r) const;  // radially symmetric shapes only
    bool radially_symmetric() const;

    double signed_distance(double x, double y) const;  // positive inside E
    double signed_distance_radial(double r) const;

    // Largest |x| over the closure of E (distance-to-boundary bookkeeping).
    double outer_radius() const;
    std::string describe() const;

    // Throws ConfigError unless E fits in the closed ball and 0 < |E| < |Omega|.
    void validate_inside(const BallDomain& dom) const;

  private:
    enum class Kind { Ball, Annulus, Ellipse, Rectangle, Union };
    SharpShape(Kind k, double p, double q) : kind_(k), p_(p), q_(q) {}
    explicit SharpShape(std::vector<SharpShape> members);
    double inner_radius() const;

    Kind kind_;
    double p_ = 0.0, q_ = 0.0;
    std::vector<SharpShape> members_;
};

}  // namespace fk
