#pragma once

// Volume change along the deformation from the Schlafli formula
// dV/dalpha = -ell/2, integrated against the z-envelopes.

#include <algorithm>
#include <cmath>

#include "dehnbounds/core.hpp"
#include "dehnbounds/envelopes.hpp"
#include "dehnbounds/numerics.hpp"
#include "dehnbounds/scalar_bounds.hpp"

namespace dehn {

/// Minimal volume of an orientable cusped hyperbolic 3-manifold (figure-eight
/// knot complement and its sister), imported from Cao-Meyerhoff.
inline constexpr double kMinCuspedVolume = 2.02988;

/// dV/dalpha = -ell/2.
inline double dv_dalpha(double ell) {
    detail::require(std::isfinite(ell) && ell >= 0.0, "dv_dalpha", "core length must be >= 0, got " + detail::fmt(ell));
    return -0.5 * ell;
}

/// Volume change |delta_alpha| ell0 / 2 when the core length is monotone in alpha.
inline double schlafli_easy_bound(double delta_alpha, double ell0) {
    detail::require_positive(ell0, "schlafli_easy_bound", "initial core length");
    return 0.5 * std::abs(delta_alpha) * ell0;
}

enum class VolumeSide { lower, upper };

/// Integrand H'/(4H(H + G)) (lower) or H'/(4H(H - G~)) (upper), written as
/// (1/4H) (1 + (1 - z) R(z)) with R = F or Ftilde so that nothing cancels as
/// z -> 1, where both tend to C/4.
inline double volume_integrand(double z, VolumeSide side, Cusp cusp = Cusp::single,
                               const PackingConstants& k = packing_constants()) {
    detail::require(std::isfinite(z) && z >= k.z_at_hmax * (1.0 - 1e-12) && z <= 1.0, "volume_integrand",
                    "z must lie in [z_at_hmax, 1], got " + detail::fmt(z));
    const double inv_4H = k.C(cusp) * z * (1.0 + z) / (4.0 * (1.0 + z * z));
    const double regular = side == VolumeSide::lower ? F(z) : Ftilde(z);
    return inv_4H * (1.0 + (1.0 - z) * regular);
}

/// int_{z_from}^1 of the chosen integrand: a bound on the volume lost while z
/// decreases from 1 to z_from.
inline double volume_drop_integral(double z_from, VolumeSide side, Cusp cusp = Cusp::single,
                                   const Context& ctx = default_context()) {
    if (z_from >= 1.0) return 0.0;
    return numerics::integrate([&](double z) { return volume_integrand(z, side, cusp, ctx.constants); }, z_from, 1.0,
                               ctx.quad_tol);
}

struct VolumeChangeResult {
    double ell_hat = 0.0;  // core length at alpha = 2 pi
    double z_hat = 1.0;    // tanh(h^{-1}(2 pi ell_hat))
    Bracket delta_v;
    double nz_asymptote = 0.0;  // pi ell_hat / 2
};

/// Two-sided bound on Volume(cusped) - Volume(filled) given the core length
/// of the filled manifold, assuming alpha * ell <= h_max throughout.
inline VolumeChangeResult delta_v_bounds(double ell_hat, const Context& ctx = default_context()) {
    const PackingConstants& k = ctx.constants;
    detail::require(std::isfinite(ell_hat) && ell_hat >= 0.0, "delta_v_bounds",
                    "core length must be >= 0, got " + detail::fmt(ell_hat));
    const double ell_max = k.h_max / two_pi;
    if (ell_hat > ell_max)
        throw HumpExceeded("delta_v_bounds: 2 pi ell = " + detail::fmt(two_pi * ell_hat) + " exceeds h_max = " +
                               detail::fmt(k.h_max),
                           two_pi * two_pi);
    VolumeChangeResult r;
    r.ell_hat = ell_hat;
    r.nz_asymptote = 0.5 * pi * ell_hat;
    if (ell_hat == 0.0) {
        r.delta_v = Bracket(0.0, 0.0);
        return r;
    }
    r.z_hat = std::tanh(h_inverse(std::min(two_pi * ell_hat, k.h_max), k, ctx.root_tol));
    r.delta_v = Bracket(volume_drop_integral(r.z_hat, VolumeSide::lower, Cusp::single, ctx),
                        volume_drop_integral(r.z_hat, VolumeSide::upper, Cusp::single, ctx));
    return r;
}

/// Volume lower bound for any filling along a slope of normalized length at
/// least the single-cusp threshold.
inline double min_volume_after_filling(double v_cusped_min = kMinCuspedVolume, const Context& ctx = default_context()) {
    return v_cusped_min - delta_v_bounds(ctx.constants.h_max / two_pi, ctx).delta_v.hi;
}

}  // namespace dehn
