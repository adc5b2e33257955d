#pragma once

#include <functional>
#include <string>

namespace fk {

// Double-well / double-obstacle potential psi on [0,1] with the derived
// quantities Psi(s) = int_0^s sqrt(2 psi), c0 = Psi(1) and
// alpha_delta = min_{[delta,1-delta]} psi.  Construction validates
// psi(0) = psi(1) = 0, positivity on (0,1) and non-degenerate endpoints.
class Potential {
  public:
    static Potential double_well();      // psi = 1/4 s^2 (1-s)^2
    static Potential double_obstacle();  // psi = 1/2 s (1-s), box handled by projection
    static Potential custom(std::string name,
                            std::function<double(double)> psi,
                            std::function<double(double)> dpsi);
    static Potential by_name(const std::string& name);  // the two built-ins

    const std::string& name() const { return name_; }
    double psi(double s) const;
    double dpsi(double s) const;
    double big_psi(double s) const;
    double c0() const { return c0_; }
    double alpha_delta(double delta) const;

  private:
    Potential(std::string name, std::function<double(double)> psi,
              std::function<double(double)> dpsi);
    void validate() const;

    std::string name_;
    std::function<double(double)> psi_, dpsi_;
    double c0_ = 0.0;
};

}  // namespace fk
