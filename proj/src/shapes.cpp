#include "fk/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fk/errors.hpp"

namespace fk {

namespace {
double sphere_area(int dim, double r) {
    return dim == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
}
}  // namespace

SharpShape SharpShape::ball(double r) {
    if (!(r > 0.0)) throw ConfigError("ball: radius must be positive");
    return SharpShape(Kind::Ball, r, 0.0);
}

SharpShape SharpShape::annulus(double r_in, double r_out) {
    if (!(r_in > 0.0) || !(r_out > r_in))
        throw ConfigError("annulus: need 0 < r_in < r_out");
    return SharpShape(Kind::Annulus, r_in, r_out);
}

SharpShape SharpShape::ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("ellipse: semi-axes must be positive");
    return SharpShape(Kind::Ellipse, a, b);
}

SharpShape SharpShape::rectangle(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("rectangle: sides must be positive");
    return SharpShape(Kind::Rectangle, a, b);
}

SharpShape::SharpShape(std::vector<SharpShape> members)
    : kind_(Kind::Union), members_(std::move(members)) {
    if (members_.size() < 2) throw ConfigError("union: need at least two members");
    // Disjointness via radial bands [inner_radius, outer_radius].
    std::vector<std::pair<double, double>> bands;
    for (const auto& m : members_) {
        if (m.kind_ == Kind::Union) throw ConfigError("union: no nested unions");
        bands.emplace_back(m.inner_radius(), m.outer_radius());
    }
    std::sort(bands.begin(), bands.end());
    for (std::size_t i = 1; i < bands.size(); ++i)
        if (bands[i].first < bands[i - 1].second - 1e-12)
            throw ConfigError("union: members are not radially disjoint");
}

SharpShape SharpShape::disjoint_union(std::vector<SharpShape> members) {
    return SharpShape(std::move(members));
}

double SharpShape::inner_radius() const {
    return kind_ == Kind::Annulus ? p_ : 0.0;
}

double SharpShape::outer_radius() const {
    switch (kind_) {
        case Kind::Ball: return p_;
        case Kind::Annulus: return q_;
        case Kind::Ellipse: return std::max(p_, q_);
        case Kind::Rectangle: return 0.5 * std::hypot(p_, q_);
        case Kind::Union: {
            double m = 0.0;
            for (const auto& s : members_) m = std::max(m, s.outer_radius());
            return m;
        }
    }
    return 0.0;
}

double SharpShape::volume(int dim) const {
    if (dim == 3 && kind_ != Kind::Ball && kind_ != Kind::Annulus && kind_ != Kind::Union)
        throw ConfigError("shape: only balls/annuli exist in dimension 3");
    switch (kind_) {
        case Kind::Ball:
            return dim == 2 ? kPi * p_ * p_ : (4.0 / 3.0) * kPi * p_ * p_ * p_;
        case Kind::Annulus:
            return dim == 2 ? kPi * (q_ * q_ - p_ * p_)
                            : (4.0 / 3.0) * kPi * (q_ * q_ * q_ - p_ * p_ * p_);
        case Kind::Ellipse: return kPi * p_ * q_;
        case Kind::Rectangle: return p_ * q_;
        case Kind::Union: {
            double v = 0.0;
            for (const auto& s : members_) v += s.volume(dim);
            return v;
        }
    }
    return 0.0;
}

double SharpShape::perimeter(const BallDomain& dom) const {
    const double tol = 1e-12 * dom.radius;
    switch (kind_) {
        case Kind::Ball:
            return p_ < dom.radius - tol ? sphere_area(dom.dim, p_) : 0.0;
        case Kind::Annulus:
            return sphere_area(dom.dim, p_) +
                   (q_ < dom.radius - tol ? sphere_area(dom.dim, q_) : 0.0);
        case Kind::Ellipse: {
            // arc length by composite Simpson on a quarter, x4
            const int n = 4096;
            const double h = (kPi / 2) / n;
            auto f = [&](double t) {
                const double st = std::sin(t), ct = std::cos(t);
                return std::sqrt(p_ * p_ * st * st + q_ * q_ * ct * ct);
            };
            double s = f(0.0) + f(kPi / 2);
            for (int k = 1; k < n; ++k) s += f(k * h) * (k % 2 ? 4.0 : 2.0);
            return 4.0 * s * h / 3.0;
        }
        case Kind::Rectangle: return 2.0 * (p_ + q_);
        case Kind::Union: {
            double v = 0.0;
            for (const auto& s : members_) v += s.perimeter(dom);
            return v;
        }
    }
    return 0.0;
}

double SharpShape::boundary_contact(const BallDomain& dom) const {
    const double tol = 1e-12 * dom.radius;
    switch (kind_) {
        case Kind::Ball:
            return std::abs(p_ - dom.radius) <= tol ? dom.boundary_measure() : 0.0;
        case Kind::Annulus:
            return std::abs(q_ - dom.radius) <= tol ? dom.boundary_measure() : 0.0;
        case Kind::Union: {
            double v = 0.0;
            for (const auto& s : members_) v += s.boundary_contact(dom);
            return v;
        }
        default: return 0.0;
    }
}

bool SharpShape::radially_symmetric() const {
    if (kind_ == Kind::Ball || kind_ == Kind::Annulus) return true;
    if (kind_ == Kind::Union) {
        for (const auto& s : members_)
            if (!s.radially_symmetric()) return false;
        return true;
    }
    return false;
}

bool SharpShape::contains_radial(double r) const {
    switch (kind_) {
        case Kind::Ball: return r < p_;
        case Kind::Annulus: return r > p_ && r < q_;
        case Kind::Union:
            for (const auto& s : members_)
                if (s.contains_radial(r)) return true;
            return false;
        default: throw ConfigError("contains_radial: shape is not radially symmetric");
    }
}

bool SharpShape::contains(double x, double y) const {
    switch (kind_) {
        case Kind::Ball: return std::hypot(x, y) < p_;
        case Kind::Annulus: {
            const double r = std::hypot(x, y);
            return r > p_ && r < q_;
        }
        case Kind::Ellipse: {
            const double u = x / p_, v = y / q_;
            return u * u + v * v < 1.0;
        }
        case Kind::Rectangle:
            return std::abs(x) < 0.5 * p_ && std::abs(y) < 0.5 * q_;
        case Kind::Union:
            for (const auto& s : members_)
                if (s.contains(x, y)) return true;
            return false;
    }
    return false;
}

double SharpShape::signed_distance_radial(double r) const {
    switch (kind_) {
        case Kind::Ball: return p_ - r;
        case Kind::Annulus: return std::min(r - p_, q_ - r);
        case Kind::Union: {
            double best = -1e300;
            for (const auto& s : members_) best = std::max(best, s.signed_distance_radial(r));
            return best;
        }
        default: throw ConfigError("signed_distance_radial: not radially symmetric");
    }
}

double SharpShape::signed_distance(double x, double y) const {
    switch (kind_) {
        case Kind::Ball: return p_ - std::hypot(x, y);
        case Kind::Annulus: {
            const double r = std::hypot(x, y);
            return std::min(r - p_, q_ - r);
        }
        case Kind::Rectangle: {
            const double dx = std::abs(x) - 0.5 * p_, dy = std::abs(y) - 0.5 * q_;
            if (dx <= 0.0 && dy <= 0.0) return -std::max(dx, dy);  // inside
            const double ox = std::max(dx, 0.0), oy = std::max(dy, 0.0);
            return -std::hypot(ox, oy);
        }
        case Kind::Ellipse: {
            // Fold into the first quadrant and minimize the distance to the
            // parametrized boundary by golden-section search; unimodal there.
            const double px = std::abs(x), py = std::abs(y);
            auto dist2 = [&](double t) {
                const double ex = p_ * std::cos(t) - px, ey = q_ * std::sin(t) - py;
                return ex * ex + ey * ey;
            };
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double lo = 0.0, hi = kPi / 2;
            double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
            double fc = dist2(c), fd = dist2(d);
            for (int it = 0; it < 120; ++it) {
                if (fc < fd) {
                    hi = d; d = c; fd = fc;
                    c = hi - gr * (hi - lo); fc = dist2(c);
                } else {
                    lo = c; c = d; fc = fd;
                    d = lo + gr * (hi - lo); fd = dist2(d);
                }
            }
            const double dist = std::sqrt(dist2(0.5 * (lo + hi)));
            return contains(x, y) ? dist : -dist;
        }
        case Kind::Union: {
            double mind = 1e300;
            for (const auto& s : members_) mind = std::min(mind, std::abs(s.signed_distance(x, y)));
            return contains(x, y) ? mind : -mind;
        }
    }
    return 0.0;
}

void SharpShape::validate_inside(const BallDomain& dom) const {
    if (outer_radius() > dom.radius + 1e-9)
        throw ConfigError("shape does not fit inside the domain ball");
    const double v = volume(dom.dim);
    if (!(v > 0.0) || !(v < dom.volume() * (1.0 - 1e-12)))
        throw ConfigError("shape volume must lie strictly between 0 and |Omega|");
    if (kind_ == Kind::Union)
        for (const auto& s : members_) s.validate_inside(dom);
}

std::string SharpShape::describe() const {
    std::ostringstream ss;
    switch (kind_) {
        case Kind::Ball: ss << "ball:" << p_; break;
        case Kind::Annulus: ss << "annulus:" << p_ << "," << q_; break;
        case Kind::Ellipse: ss << "ellipse:" << p_ << "," << q_; break;
        case Kind::Rectangle: ss << "rectangle:" << p_ << "," << q_; break;
        case Kind::Union:
            for (std::size_t i = 0; i < members_.size(); ++i)
                ss << (i ? ";" : "") << members_[i].describe();
            break;
    }
    return ss.str();
}

SharpShape SharpShape::parse(const std::string& text) {
    std::vector<SharpShape> parts;
    std::stringstream all(text);
    std::string piece;
    while (std::getline(all, piece, ';')) {
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string::npos) throw ConfigError("shape: expected name:params");
        const std::string name = piece.substr(0, colon);
        std::vector<double> ps;
        std::stringstream args(piece.substr(colon + 1));
        std::string tok;
        while (std::getline(args, tok, ',')) ps.push_back(std::stod(tok));
        if (name == "ball" && ps.size() == 1) parts.push_back(ball(ps[0]));
        else if (name == "annulus" && ps.size() == 2) parts.push_back(annulus(ps[0], ps[1]));
        else if (name == "ellipse" && ps.size() == 2) parts.push_back(ellipse(ps[0], ps[1]));
        else if (name == "rectangle" && ps.size() == 2) parts.push_back(rectangle(ps[0], ps[1]));
        else throw ConfigError("shape: unknown descriptor '" + piece + "'");
    }
    if (parts.empty()) throw ConfigError("shape: empty descriptor");
    if (parts.size() == 1) return parts[0];
    return disjoint_union(std::move(parts));
}

}  // namespace fk
