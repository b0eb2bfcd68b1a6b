#pragma once

// The packing function h(r) = C tanh(r)/cosh(2r), its inverse on the
// decreasing branch, and the z = tanh(rho) substitutions H, G, G~, F used by
// the deformation inequalities.

#include <cmath>

#include "dehnbounds/core.hpp"
#include "dehnbounds/numerics.hpp"

namespace dehn {

/// Constants derived from the ellipse packing argument. Everything is
/// computed from first principles except the two operative literals
/// `rho1` = 0.531 and `z1` = 0.4862 used as validity cut-offs.
struct PackingConstants {
    double S = 0.0;          // sup of sinh(x)/x on [0, arcsinh(1/(2 sqrt 2))]
    double C_single = 0.0;   // 2 sqrt(3) / S, the area coefficient with two ellipses
    double C_multi = 0.0;    // one ellipse
    double z_at_hmax = 0.0;  // sqrt(sqrt(5) - 2)
    double r_at_hmax = 0.0;  // arctanh(z_at_hmax)
    double h_max = 0.0;      // h(r_at_hmax)
    double rho1 = 0.531;
    double z1 = 0.4862;

    double C(Cusp cusp) const { return cusp == Cusp::single ? C_single : C_multi; }

    /// `c_scale` multiplies the area coefficient; anything other than 1 is a
    /// deliberately wrong constant set used to exercise failure paths.
    static PackingConstants compute(double c_scale = 1.0) {
        PackingConstants k;
        const double s0 = 1.0 / (2.0 * std::sqrt(2.0));
        k.S = s0 / std::asinh(s0);
        k.C_single = c_scale * 2.0 * std::sqrt(3.0) / k.S;
        k.C_multi = 0.5 * k.C_single;
        k.z_at_hmax = std::sqrt(std::sqrt(5.0) - 2.0);
        k.r_at_hmax = std::atanh(k.z_at_hmax);
        const double z = k.z_at_hmax;
        k.h_max = k.C_single * z * (1.0 - z * z) / (1.0 + z * z);
        return k;
    }
};

inline const PackingConstants& packing_constants() {
    static const PackingConstants k = PackingConstants::compute();
    return k;
}

/// h(r) = C tanh(r) / cosh(2r): lower bound for alpha * ell at tube radius r.
inline double h(double r, const PackingConstants& k = packing_constants()) {
    detail::require_positive(r, "h", "tube radius");
    return k.C_single * std::tanh(r) / std::cosh(2.0 * r);
}

/// dh/dr.
inline double h_prime(double r, const PackingConstants& k = packing_constants()) {
    detail::require_positive(r, "h_prime", "tube radius");
    const double c2 = std::cosh(2.0 * r);
    const double ch = std::cosh(r);
    return k.C_single * (1.0 / (ch * ch * c2) - 2.0 * std::tanh(r) * std::sinh(2.0 * r) / (c2 * c2));
}

/// f(z) = z (1 - z^2) / (1 + z^2), so that h(arctanh z) = C f(z).
inline double f_of_z(double z) {
    detail::require(std::isfinite(z) && z > 0.0 && z <= 1.0, "f_of_z", "z must lie in (0, 1], got " + detail::fmt(z));
    return z * (1.0 - z * z) / (1.0 + z * z);
}

/// The unique r >= r_at_hmax with h(r) = a, for 0 < a <= h_max.
inline double h_inverse(double a, const PackingConstants& k = packing_constants(), double tol = 1e-12) {
    detail::require(std::isfinite(a) && a > 0.0, "h_inverse", "argument must be positive, got " + detail::fmt(a));
    if (a > k.h_max)
        throw DomainError("h_inverse: " + detail::fmt(a) + " is above hump h_max = " + detail::fmt(k.h_max));
    if (a == k.h_max) return k.r_at_hmax;

    double lo = k.r_at_hmax;
    double hi = 50.0;
    // h(r) ~ 2C exp(-2r): past r = 350 cosh overflows long before a could be that small.
    while (h(hi, k) > a) {
        lo = hi;
        hi *= 2.0;
        if (hi > 350.0) throw DomainError("h_inverse: argument " + detail::fmt(a) + " too small to invert");
    }
    double r = numerics::bisect_decreasing([&](double x) { return h(x, k); }, a, lo, hi, tol);

    for (int i = 0; i < 3; ++i) {
        const double d = h_prime(r, k);
        if (std::abs(d) < 1e-3) break;
        const double next = r - (h(r, k) - a) / d;
        if (!(next > lo && next < hi)) break;
        r = next;
    }
    return r;
}

namespace detail {
inline void require_open_unit(double z, const char* where) {
    require(std::isfinite(z) && z > 0.0 && z < 1.0, where, "z must lie in (0, 1), got " + fmt(z));
}
inline void require_half_open_unit(double z, const char* where) {
    require(std::isfinite(z) && z > 0.0 && z <= 1.0, where, "z must lie in (0, 1], got " + fmt(z));
}
}  // namespace detail

/// H(z) = 1/(alpha ell) = (1 + z^2) / (C z (1 - z^2)).
inline double H(double z, Cusp cusp = Cusp::single, const PackingConstants& k = packing_constants()) {
    detail::require_open_unit(z, "H");
    return (1.0 + z * z) / (k.C(cusp) * z * (1.0 - z) * (1.0 + z));
}

/// G(z) = (H/2)(1 - z^2)/z^2 = (1 + z^2) / (2C z^3).
inline double G(double z, Cusp cusp = Cusp::single, const PackingConstants& k = packing_constants()) {
    detail::require_half_open_unit(z, "G");
    return (1.0 + z * z) / (2.0 * k.C(cusp) * z * z * z);
}

/// G~(z) = (1 + z^2)^2 / (2C z^3 (3 - z^2)).
inline double Gtilde(double z, Cusp cusp = Cusp::single, const PackingConstants& k = packing_constants()) {
    detail::require_half_open_unit(z, "Gtilde");
    const double q = 1.0 + z * z;
    return q * q / (2.0 * k.C(cusp) * z * z * z * (3.0 - z * z));
}

/// dH/dz = (z^4 + 4z^2 - 1) / (C z^2 (1 - z^2)^2). Positive exactly when
/// z > z_at_hmax, i.e. on the decreasing branch of h.
inline double dH_dz(double z, Cusp cusp = Cusp::single, const PackingConstants& k = packing_constants()) {
    detail::require_open_unit(z, "dH_dz");
    const double z2 = z * z;
    const double g = (1.0 - z) * (1.0 + z);
    return (z2 * z2 + 4.0 * z2 - 1.0) / (k.C(cusp) * z2 * g * g);
}

/// Regular part of the lower separated kernel: H'/(H + G) = F(z) + 1/(1 - z).
inline double F(double z) {
    detail::require_half_open_unit(z, "F");
    const double z2 = z * z;
    const double q = 1.0 + z2;
    return -(1.0 + 4.0 * z + 6.0 * z2 + z2 * z2) / ((z + 1.0) * q * q);
}

/// Regular part of the upper separated kernel: H'/(H - G~) = Ftilde(z) + 1/(1 - z).
/// The simple pole at z = 1 is divided out exactly, so this is cancellation
/// free up to z = 1 where it equals 1/2. Poles at z = sqrt(2) - 1 lie below z1.
inline double Ftilde(double z) {
    detail::require(std::isfinite(z) && z > std::sqrt(2.0) - 1.0 && z <= 1.0, "Ftilde",
                    "z must lie in (sqrt(2) - 1, 1], got " + detail::fmt(z));
    const double z2 = z * z;
    const double num = z2 * z2 * z2 + 7.0 * z2 * z2 + 12.0 * z2 * z - 9.0 * z2 - 4.0 * z + 1.0;
    const double den = (z + 1.0) * (z2 + 1.0) * (z2 - 2.0 * z - 1.0) * (z2 + 2.0 * z - 1.0);
    return -num / den;
}

/// Lower separated kernel H'/(H + G), independent of the cusp count.
inline double lower_kernel(double z) {
    detail::require_open_unit(z, "lower_kernel");
    return F(z) + 1.0 / (1.0 - z);
}

/// Upper separated kernel H'/(H - G~), independent of the cusp count.
inline double upper_kernel(double z) {
    detail::require_open_unit(z, "upper_kernel");
    return Ftilde(z) + 1.0 / (1.0 - z);
}

}  // namespace dehn
