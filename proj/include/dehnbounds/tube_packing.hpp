#pragma once

// Tube packing geometry in hyperbolic cylindrical coordinates about a
// geodesic, with the angle taken in the universal cover (not mod 2 pi).

#include <cmath>

#include "dehnbounds/core.hpp"
#include "dehnbounds/scalar_bounds.hpp"

namespace dehn {

/// (r, theta, zeta) with metric dr^2 + sinh^2 r dtheta^2 + cosh^2 r dzeta^2.
struct CylPoint {
    double r = 0.0;
    double theta = 0.0;
    double zeta = 0.0;

    CylPoint() = default;
    CylPoint(double r_, double theta_, double zeta_) : r(r_), theta(theta_), zeta(zeta_) {
        detail::require(std::isfinite(r_) && r_ >= 0.0, "CylPoint", "r must be >= 0, got " + detail::fmt(r_));
    }
};

/// Image under the isometry rotating by dtheta about the axis and translating
/// by dzeta along it; the peripheral group acts by such maps.
inline CylPoint translate(const CylPoint& p, double dtheta, double dzeta) {
    return {p.r, p.theta + dtheta, p.zeta + dzeta};
}

/// Hyperbolic distance, valid for |theta1 - theta2| <= pi.
///
/// Evaluates cosh d = cosh(dzeta) cosh r1 cosh r2 - cos(dtheta) sinh r1 sinh r2
/// through cosh d - 1 = 2 sinh^2(d/2) written as a sum of non-negative terms,
/// so nearby points do not lose precision to acosh near 1.
inline double cyl_distance(const CylPoint& p1, const CylPoint& p2) {
    const double dtheta = p1.theta - p2.theta;
    detail::require(std::abs(dtheta) <= pi, "cyl_distance",
                    "angular separation must be at most pi, got " + detail::fmt(dtheta));
    const double sz = std::sinh(0.5 * (p1.zeta - p2.zeta));
    const double sr = std::sinh(0.5 * (p1.r - p2.r));
    const double st = std::sin(0.5 * dtheta);
    const double half = std::cosh(p1.r) * std::cosh(p2.r) * sz * sz + sr * sr +
                        st * st * std::sinh(p1.r) * std::sinh(p2.r);  // sinh^2(d/2)
    return 2.0 * std::asinh(std::sqrt(half));
}

/// Whether (theta, zeta) lies in the orthogonal projection onto the
/// (theta, zeta) plane of the d-ball centred at (r0, 0, 0), d < r0:
/// sinh^2 zeta cosh^2 r0 + sin^2 theta sinh^2 r0 <= sinh^2 d.
inline bool ball_projection_contains(double r0, double d, double theta, double zeta) {
    detail::require_positive(d, "ball_projection_contains", "ball radius");
    detail::require(d < r0, "ball_projection_contains",
                    "ball radius must be below centre radius (" + detail::fmt(d) + " >= " + detail::fmt(r0) + ")");
    const double sz = std::sinh(zeta) * std::cosh(r0);
    const double st = std::sin(theta) * std::sinh(r0);
    const double sd = std::sinh(d);
    return sz * sz + st * st <= sd * sd;
}

/// Semi-axes of the ellipse inscribed in the projection of a radius-R ball
/// centred at distance 2R, in the flat coordinates (zeta cosh R, theta sinh R)
/// of the torus at radius R.
struct EllipseAxes {
    double a_axis = 0.0;  // along zeta cosh R
    double b_axis = 0.0;  // along theta sinh R
    double area() const { return pi * a_axis * b_axis; }
};

inline EllipseAxes inscribed_ellipse_axes(double R, const PackingConstants& k = packing_constants()) {
    detail::require_positive(R, "inscribed_ellipse_axes", "radius");
    const double s = std::sinh(R);
    const double c = std::cosh(R);
    return {c * s / (k.S * std::cosh(2.0 * R)), s * s / std::sinh(2.0 * R)};
}

/// Lower bound C sinh^2 R / cosh 2R on area(T_R); halved when only one packed
/// ellipse is available.
inline double torus_area_lower_bound(double R, Cusp cusp = Cusp::single,
                                     const PackingConstants& k = packing_constants()) {
    detail::require_positive(R, "torus_area_lower_bound", "radius");
    const double s = std::sinh(R);
    return k.C(cusp) * s * s / std::cosh(2.0 * R);
}

}  // namespace dehn
