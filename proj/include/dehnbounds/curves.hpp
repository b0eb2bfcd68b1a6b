#pragma once

// Sampled curves along the deformation: the z/rho/ell envelopes together with
// the running volume-drop bounds, and the volume-change bracket as a function
// of the final core length.

#include <cmath>
#include <string>
#include <vector>

#include "dehnbounds/envelopes.hpp"
#include "dehnbounds/volume_bounds.hpp"

namespace dehn {

struct EnvelopeSample {
    double alpha = 0.0;
    double t = 0.0;
    Bracket z;
    double rho_lo = 0.0;
    Bracket ell;
    Bracket v_drop;  // volume lost between alpha = 0 and this sample
};

struct EnvelopeCurve {
    double L_hat = 0.0;
    Cusp cusp = Cusp::single;
    double quad_tol = 0.0;
    double root_tol = 0.0;
    double t_max = 0.0;      // validity limit of the envelopes
    bool truncated = false;  // t_max < (2 pi)^2; the last sample sits at t_max
    std::string warning;
    std::vector<EnvelopeSample> samples;
};

/// Cone angles for an n-point curve: the first n/2 log-spaced on [1e-3, 1),
/// the rest linear on [1, 2 pi] ending exactly at 2 pi.
inline std::vector<double> envelope_alphas(int n) {
    detail::require(n >= 2, "envelope_alphas", "need at least 2 samples, got " + std::to_string(n));
    const int n_log = n / 2;
    const int n_lin = n - n_log;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n_log; ++i) out.push_back(std::pow(10.0, -3.0 + 3.0 * i / n_log));
    for (int j = 0; j < n_lin; ++j)
        out.push_back(n_lin == 1 ? two_pi : (j == n_lin - 1 ? two_pi : 1.0 + (two_pi - 1.0) * j / (n_lin - 1)));
    return out;
}

inline EnvelopeSample envelope_sample(double alpha, double L, Cusp cusp, const Context& ctx) {
    const double t = alpha * alpha;
    const ZEnvelope e = z_envelope(t, L, cusp, ctx);
    EnvelopeSample s;
    s.alpha = alpha;
    s.t = t;
    s.z = e.z;
    s.rho_lo = detail::rho_from_gap(e.gap_lo);
    s.ell = Bracket(detail::alpha_ell_from_gap(e.gap_hi, cusp, ctx.constants) / alpha,
                    detail::alpha_ell_from_gap(e.gap_lo, cusp, ctx.constants) / alpha);
    // The true z(t) lies in [z_lo, z_hi] and both integrands are positive.
    s.v_drop = Bracket(volume_drop_integral(e.z.hi, VolumeSide::lower, cusp, ctx),
                       volume_drop_integral(e.z.lo, VolumeSide::upper, cusp, ctx));
    return s;
}

inline EnvelopeCurve sample_envelope(double L, Cusp cusp, int n, const Context& ctx = default_context()) {
    detail::require_normalized_length(L, "sample_envelope");
    EnvelopeCurve c;
    c.L_hat = L;
    c.cusp = cusp;
    c.quad_tol = ctx.quad_tol;
    c.root_tol = ctx.root_tol;
    c.t_max = envelope_validity_limit(L, cusp, ctx);

    for (double alpha : envelope_alphas(n)) {
        if (alpha * alpha > c.t_max) {
            c.truncated = true;
            break;
        }
        c.samples.push_back(envelope_sample(alpha, L, cusp, ctx));
    }
    if (c.truncated) {
        const double alpha_max = std::sqrt(c.t_max);
        if (c.samples.empty() || alpha_max > c.samples.back().alpha)
            c.samples.push_back(envelope_sample(alpha_max, L, cusp, ctx));
        c.warning = "envelope reaches z1 at alpha = " + detail::fmt(alpha_max) + " < 2pi: normalized length " +
                    detail::fmt(L) + " is below the threshold " +
                    detail::fmt(critical_normalized_length(cusp, ctx));
    }
    return c;
}

/// `n` evenly spaced core lengths on [lo, hi] (a single point when n == 1).
inline std::vector<VolumeChangeResult> volume_sweep(double lo, double hi, int n, const Context& ctx = default_context()) {
    detail::require(n >= 1, "volume_sweep", "need at least one point");
    detail::require(lo > 0.0 && lo <= hi, "volume_sweep", "need 0 < lo <= hi");
    std::vector<VolumeChangeResult> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double ell = n == 1 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
        out.push_back(delta_v_bounds(ell, ctx));
    }
    return out;
}

}  // namespace dehn
