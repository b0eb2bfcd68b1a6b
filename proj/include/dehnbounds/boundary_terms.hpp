#pragma once

// Closed forms for the boundary term of the harmonic deformation on the
// torus at radius R: the standard forms, their pairings, the quadratic in
// (x, y) it induces, and the resulting bound on d(ell)/d(alpha).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "dehnbounds/core.hpp"

namespace dehn {

enum class StandardFormKind { meridian, longitude };

/// 3x3 complex matrix of a standard form in the orthonormal frame
/// (radial, angular, axial); entry (i, j) is the coefficient of e_i (x) w_j.
struct StandardFormMatrix {
    using Entries = std::array<std::array<std::complex<double>, 3>, 3>;

    StandardFormKind kind = StandardFormKind::meridian;
    double r = 0.0;
    Entries entries{};

    /// 1-based access, matching the usual matrix indexing.
    const std::complex<double>& operator()(int i, int j) const { return entries.at(i - 1).at(j - 1); }

    std::complex<double> trace() const { return entries[0][0] + entries[1][1] + entries[2][2]; }

    double max_asymmetry() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(entries[i][j] - entries[j][i]));
        return m;
    }
};

inline StandardFormMatrix standard_form(StandardFormKind kind, double r) {
    detail::require_positive(r, "standard_form", "radius");
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    const std::complex<double> I(0.0, 1.0);
    StandardFormMatrix m;
    m.kind = kind;
    m.r = r;
    auto& e = m.entries;
    if (kind == StandardFormKind::meridian) {
        e[0][0] = -1.0 / (c * c * s * s);
        e[1][1] = 1.0 / (s * s);
        e[1][2] = -I / (c * s);
        e[2][1] = -I / (c * s);
        e[2][2] = -1.0 / (c * c);
    } else {
        e[0][0] = -1.0 / (c * c);
        e[1][1] = -1.0;
        e[1][2] = -I * s / c;
        e[2][1] = -I * s / c;
        e[2][2] = (c * c + 1.0) / (c * c);
    }
    return m;
}

/// Boundary pairings b_R(., .) divided by area(T_R).
struct BoundaryPairings {
    double bmm = 0.0;  // (eta_m, eta_m)
    double bll = 0.0;  // (eta_l, eta_l), also (*D eta_l, *D eta_l)
    double bml = 0.0;  // (eta_m, eta_l)
    double blm = 0.0;  // (eta_l, eta_m)
};

inline BoundaryPairings boundary_pairings(double R) {
    detail::require_positive(R, "boundary_pairings", "radius");
    const double s = std::sinh(R);
    const double c = std::cosh(R);
    const double mer = 1.0 / (s * s) + 1.0 / (c * c);
    const double lon = 2.0 + 1.0 / (c * c);
    return {mer / (s * c), -(s / c) * lon, -lon / (s * c), (s / c) * mer};
}

/// Flat geometry of the torus at radius R around a core of cone angle alpha.
struct MeridianGeometry {
    double R = 0.0;
    double alpha = 0.0;
    double m = 0.0;  // meridian length alpha sinh R
    std::optional<double> ell;
    std::optional<double> height;  // ell cosh R
    std::optional<double> area;    // m * height

    static MeridianGeometry make(double R, double alpha, std::optional<double> ell = std::nullopt) {
        detail::require_positive(R, "MeridianGeometry", "radius");
        detail::require_cone_angle(alpha, "MeridianGeometry");
        MeridianGeometry g;
        g.R = R;
        g.alpha = alpha;
        g.m = alpha * std::sinh(R);
        if (ell) {
            detail::require_positive(*ell, "MeridianGeometry", "core length");
            g.ell = ell;
            g.height = *ell * std::cosh(R);
            g.area = g.m * *g.height;
        }
        return g;
    }
};

/// b_R(eta_0, eta_0)/area = a (x^2 + y^2) + b x + c.
struct FluxCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// 4ac - b^2, which equals -tanh^2(R)/m^4 (negative since a < 0 < c).
    double discriminant() const { return 4.0 * a * c - b * b; }
    double evaluate(double x, double y) const { return a * (x * x + y * y) + b * x + c; }
    /// Maximum of the quadratic over (x, y), attained at x = -b/(2a), y = 0.
    double maximum() const { return discriminant() / (4.0 * a); }
};

/// Coefficients in terms of the flat meridian length m = alpha sinh R.
inline FluxCoefficients flux_coefficients_from_meridian(double R, double m) {
    detail::require_positive(R, "flux_coefficients", "radius");
    detail::require_positive(m, "flux_coefficients", "meridian length");
    const double t = std::tanh(R);
    const double c2 = std::cosh(R) * std::cosh(R);
    const double m2 = m * m;
    return {-t * (2.0 * c2 + 1.0) / c2, t / (2.0 * c2 * m2), (t + t * t * t) / (16.0 * m2 * m2)};
}

inline FluxCoefficients flux_coefficients(double R, double alpha) {
    detail::require_positive(R, "flux_coefficients", "radius");
    detail::require_cone_angle(alpha, "flux_coefficients");
    return flux_coefficients_from_meridian(R, alpha * std::sinh(R));
}

/// True iff (x, y) satisfies the disk constraint (x + b/2a)^2 + y^2 <= (b^2 - 4ac)/4a^2
/// forced by positivity of the boundary term.
inline bool xy_admissible(double x, double y, double R, double m) {
    const FluxCoefficients f = flux_coefficients_from_meridian(R, m);
    const double cx = x + f.b / (2.0 * f.a);
    return cx * cx + y * y <= -f.discriminant() / (4.0 * f.a * f.a);
}

/// Interval containing the longitude coefficient x.
struct XInterval {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double radius() const { return 0.5 * (x_hi - x_lo); }
    double center() const { return 0.5 * (x_hi + x_lo); }
};

/// (2cosh^2 R - 1)/(2cosh^2 R + 1); increases from 1/3 to 1.
inline double x_lo_factor(double R) {
    const double c2 = std::cosh(R) * std::cosh(R);
    return (2.0 * c2 - 1.0) / (2.0 * c2 + 1.0);
}

/// Same factor written as (2sinh^2 R + 1)/(2sinh^2 R + 3).
inline double x_lo_factor_sinh_form(double R) {
    const double s2 = std::sinh(R) * std::sinh(R);
    return (2.0 * s2 + 1.0) / (2.0 * s2 + 3.0);
}

inline XInterval x_interval(double R, double alpha) {
    detail::require_positive(R, "x_interval", "radius");
    detail::require_cone_angle(alpha, "x_interval");
    const double m = alpha * std::sinh(R);
    const double inv = 1.0 / (4.0 * m * m);
    return {-inv * x_lo_factor(R), inv};
}

/// Upper bound (1/4m^4) sinh R cosh R / (2cosh^2 R + 1) for b_R(eta_0, eta_0)/area.
inline double b00_upper(double R, double m) {
    detail::require_positive(R, "b00_upper", "radius");
    detail::require_positive(m, "b00_upper", "meridian length");
    const double c = std::cosh(R);
    const double m2 = m * m;
    return std::sinh(R) * c / (4.0 * m2 * m2 * (2.0 * c * c + 1.0));
}

/// Bounds on 4 alpha^2 x: [-(1/sinh^2 R)(2sinh^2 R + 1)/(2sinh^2 R + 3), 1/sinh^2 R].
inline Bracket length_factor_bounds(double R) {
    detail::require_positive(R, "length_factor_bounds", "radius");
    const double s2 = std::sinh(R) * std::sinh(R);
    return {-x_lo_factor_sinh_form(R) / s2, 1.0 / s2};
}

/// d(ell)/d(alpha) = (ell/alpha)(1 + 4 alpha^2 x), bracketed using length_factor_bounds.
inline Bracket dl_dalpha_bounds(double ell, double alpha, double R) {
    detail::require_positive(ell, "dl_dalpha_bounds", "core length");
    detail::require_cone_angle(alpha, "dl_dalpha_bounds");
    const Bracket k = length_factor_bounds(R);
    const double base = ell / alpha;
    return {base * (1.0 + k.lo), base * (1.0 + k.hi)};
}

/// arcsinh(1/sqrt 2): above this tube radius the core length increases with alpha.
inline double length_monotone_radius() { return std::asinh(1.0 / std::sqrt(2.0)); }

/// dL/dt under omega_0 = -(1/4alpha^2) omega_m + (x + iy) omega_l for a peripheral
/// curve of complex length L (real part = translation length, imaginary = rotation).
inline std::complex<double> complex_length_derivative(std::complex<double> L, double alpha, double x, double y) {
    detail::require_positive(alpha, "complex_length_derivative", "cone angle");
    return L / (2.0 * alpha * alpha) + std::complex<double>(x, y) * (2.0 * L.real());
}

}  // namespace dehn
