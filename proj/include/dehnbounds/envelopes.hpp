#pragma once

// Envelopes of the differential inequalities satisfied along a cone-manifold
// deformation parametrized by t = alpha^2, starting from the complete
// structure (t = 0, z = 1) with initial condition u = alpha/ell -> L^2.
//
// Separating variables gives two closed forms in the gap w = 1 - z:
//
//   T_lo(w) = C L^2 w exp( int_{1-w}^1 F )       (first time z can reach 1 - w)
//   T_up(w) = C L^2 w exp( int_{1-w}^1 Ftilde )  (last time z can still be 1 - w)
//
// Both are increasing in w. Everything below works in w rather than z so that
// the near-cusp regime (w ~ 1e-12) keeps full relative precision.

#include <cmath>
#include <optional>
#include <string>

#include "dehnbounds/boundary_terms.hpp"
#include "dehnbounds/core.hpp"
#include "dehnbounds/numerics.hpp"
#include "dehnbounds/scalar_bounds.hpp"

namespace dehn {

/// Constants plus the numerical tolerances every integral and inversion uses.
struct Context {
    PackingConstants constants = packing_constants();
    double quad_tol = 1e-10;
    double root_tol = 1e-12;
};

inline const Context& default_context() {
    static const Context ctx{};
    return ctx;
}

/// A point on a deformation path.
struct ConeState {
    double alpha = 0.0;
    double t = 0.0;    // alpha^2
    double z = 0.0;    // tanh(rho)
    double u = 0.0;    // alpha / ell = t H(z)
    double rho = 0.0;  // h^{-1}(alpha ell)
    double ell = 0.0;

    static ConeState at(double alpha, double z, Cusp cusp = Cusp::single,
                        const PackingConstants& k = packing_constants()) {
        detail::require_cone_angle(alpha, "ConeState");
        ConeState s;
        s.alpha = alpha;
        s.t = alpha * alpha;
        s.z = z;
        s.u = s.t * H(z, cusp, k);
        s.rho = std::atanh(z);
        s.ell = alpha / s.u;
        return s;
    }
};

namespace detail {

inline void require_normalized_length(double L, const char* where) {
    require(std::isfinite(L) && L > 0.0, where, "normalized length must be positive, got " + fmt(L));
}

/// arctanh(1 - w) without forming 1 - w.
inline double rho_from_gap(double w) { return 0.5 * std::log((2.0 - w) / w); }

/// 1/H(1 - w) = alpha * ell, evaluated from the gap.
inline double alpha_ell_from_gap(double w, Cusp cusp, const PackingConstants& k) {
    const double z = 1.0 - w;
    return k.C(cusp) * z * w * (2.0 - w) / (1.0 + z * z);
}

inline double log_first_time_lower(double w, double L, Cusp cusp, const Context& ctx) {
    const double integral = numerics::integrate([](double z) { return F(z); }, 1.0 - w, 1.0, ctx.quad_tol);
    return std::log(ctx.constants.C(cusp) * L * L * w) + integral;
}

inline double log_first_time_upper(double w, double L, Cusp cusp, const Context& ctx) {
    const double integral = numerics::integrate([](double z) { return Ftilde(z); }, 1.0 - w, 1.0, ctx.quad_tol);
    return std::log(ctx.constants.C(cusp) * L * L * w) + integral;
}

/// Solves log_T(w) = log(t) for w in (0, w_max], log_T increasing.
template <class LogT>
double solve_gap(LogT&& log_T, double t, double w_guess, double w_max, double tol) {
    const double target = std::log(t);
    double lo = std::min(w_guess, w_max);
    while (log_T(lo) > target) {
        lo *= 0.5;
        if (lo < 1e-300) throw DomainError("solve_gap: could not bracket t = " + fmt(t));
    }
    if (log_T(w_max) <= target) return w_max;
    return numerics::bisect_increasing_log(log_T, target, lo, w_max, tol);
}

}  // namespace detail

/// Lower bound on the first time t at which z(t) can equal z, z in [z1, 1).
inline double first_time_lower_bound(double z, double L, Cusp cusp = Cusp::single,
                                     const Context& ctx = default_context()) {
    detail::require_normalized_length(L, "first_time_lower_bound");
    const double z1 = ctx.constants.z1;
    detail::require(std::isfinite(z) && z >= z1 && z < 1.0, "first_time_lower_bound",
                    "z must lie in [z1, 1) = [" + detail::fmt(z1) + ", 1), got " + detail::fmt(z));
    return std::exp(detail::log_first_time_lower(1.0 - z, L, cusp, ctx));
}

/// Upper-envelope counterpart: along any admissible path, z(t) = z forces
/// t <= first_time_upper_bound(z).
inline double first_time_upper_bound(double z, double L, Cusp cusp = Cusp::single,
                                     const Context& ctx = default_context()) {
    detail::require_normalized_length(L, "first_time_upper_bound");
    const double z1 = ctx.constants.z1;
    detail::require(std::isfinite(z) && z >= z1 && z < 1.0, "first_time_upper_bound",
                    "z must lie in [z1, 1), got " + detail::fmt(z));
    return std::exp(detail::log_first_time_upper(1.0 - z, L, cusp, ctx));
}

/// L^2 such that the lower envelope reaches z1 exactly at t = (2 pi)^2.
inline double critical_normalized_length_squared(Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    const double z1 = ctx.constants.z1;
    const double integral = numerics::integrate([](double z) { return F(z); }, z1, 1.0, ctx.quad_tol);
    return two_pi * two_pi / (ctx.constants.C(cusp) * (1.0 - z1) * std::exp(integral));
}

/// Universal normalized-length threshold beyond which the filling is reached
/// with z >= z1 throughout.
inline double critical_normalized_length(Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    return std::sqrt(critical_normalized_length_squared(cusp, ctx));
}

/// Last t for which the inequalities are guaranteed: where the lower envelope
/// reaches z1. Can exceed (2 pi)^2.
inline double envelope_validity_limit(double L, Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    detail::require_normalized_length(L, "envelope_validity_limit");
    return std::exp(detail::log_first_time_lower(1.0 - ctx.constants.z1, L, cusp, ctx));
}

/// Two-sided bound on z(t). The gaps 1 - z are kept alongside for precision.
struct ZEnvelope {
    double t = 0.0;
    Bracket z;
    double gap_lo = 0.0;  // 1 - z.lo (the larger gap)
    double gap_hi = 0.0;  // 1 - z.hi
};

inline ZEnvelope z_envelope(double t, double L, Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    detail::require_normalized_length(L, "z_envelope");
    detail::require(std::isfinite(t) && t > 0.0 && t <= two_pi * two_pi * (1.0 + 1e-14), "z_envelope",
                    "t must lie in (0, (2pi)^2], got " + detail::fmt(t));
    const double w_max = 1.0 - ctx.constants.z1;
    const double t_max = envelope_validity_limit(L, cusp, ctx);
    if (t > t_max)
        throw HumpExceeded("z_envelope: lower z-envelope reaches z1 at t = " + detail::fmt(t_max) +
                               " before t = " + detail::fmt(t),
                           t_max);

    const double guess = t / (ctx.constants.C(cusp) * L * L);
    const double w_lo = detail::solve_gap(
        [&](double w) { return detail::log_first_time_lower(w, L, cusp, ctx); }, t, guess, w_max, ctx.root_tol);
    const double w_hi = detail::solve_gap(
        [&](double w) { return detail::log_first_time_upper(w, L, cusp, ctx); }, t, guess, w_max, ctx.root_tol);
    ZEnvelope e;
    e.t = t;
    e.gap_lo = w_lo;
    e.gap_hi = std::min(w_hi, w_lo);
    e.z = Bracket(1.0 - e.gap_lo, 1.0 - e.gap_hi);
    return e;
}

/// Lower bound on the tube radius at cone angle alpha: arctanh(z_lo(alpha^2)).
inline double tube_radius_lower(double alpha, double L, Cusp cusp = Cusp::single,
                                const Context& ctx = default_context()) {
    detail::require_cone_angle(alpha, "tube_radius_lower");
    return detail::rho_from_gap(z_envelope(alpha * alpha, L, cusp, ctx).gap_lo);
}

/// Bracket on the core length ell = 1/(alpha H(z)) at cone angle alpha.
inline Bracket core_length_bracket(double alpha, double L, Cusp cusp = Cusp::single,
                                   const Context& ctx = default_context()) {
    detail::require_cone_angle(alpha, "core_length_bracket");
    const ZEnvelope e = z_envelope(alpha * alpha, L, cusp, ctx);
    return {detail::alpha_ell_from_gap(e.gap_hi, cusp, ctx.constants) / alpha,
            detail::alpha_ell_from_gap(e.gap_lo, cusp, ctx.constants) / alpha};
}

/// [-G(z), G~(z)] bracket on du/dt, valid for z in [z1, 1].
inline Bracket du_dt_bounds(double z, Cusp cusp = Cusp::single, const PackingConstants& k = packing_constants()) {
    detail::require(std::isfinite(z) && z >= k.z1 && z <= 1.0, "du_dt_bounds",
                    "z must lie in [z1, 1], got " + detail::fmt(z));
    return {-G(z, cusp, k), Gtilde(z, cusp, k)};
}

/// arcsinh(sqrt((sqrt 2 - 1)/2)): above this tube radius alpha * ell increases with alpha.
inline double alpha_ell_monotone_threshold() { return std::asinh(std::sqrt((std::sqrt(2.0) - 1.0) / 2.0)); }

enum class DrillingCriterion { none, short_with_tube, very_short, shortest_geodesic };

inline const char* to_string(DrillingCriterion c) {
    switch (c) {
        case DrillingCriterion::short_with_tube: return "short_with_tube";
        case DrillingCriterion::very_short: return "very_short";
        case DrillingCriterion::shortest_geodesic: return "shortest_geodesic";
        case DrillingCriterion::none: break;
    }
    return "none";
}

/// Which sufficient condition lets a closed geodesic be drilled out by
/// decreasing the cone angle from 2 pi to 0.
struct DrillingDecision {
    bool short_with_tube = false;    // ell <= h_max/2pi and known tube radius >= rho1
    bool very_short = false;         // ell <= 0.111, tube radius >= 0.982 imported
    bool shortest_geodesic = false;  // shortest geodesic, ell <= 0.162, tube radius >= log(3)/2 imported
    DrillingCriterion applies = DrillingCriterion::none;
    std::string reason;
};

inline constexpr double kVeryShortLength = 0.111;
inline constexpr double kVeryShortTubeRadius = 0.982;
inline constexpr double kShortestGeodesicLength = 0.162;

inline DrillingDecision drilling_predicates(double ell, std::optional<double> tube_radius, bool shortest,
                                            const PackingConstants& k = packing_constants()) {
    detail::require_positive(ell, "drilling_predicates", "core length");
    const double ell_max = k.h_max / two_pi;
    const double shortest_radius = std::log(3.0) / 2.0;
    DrillingDecision d;
    d.short_with_tube = tube_radius && ell <= ell_max && *tube_radius >= k.rho1;
    d.very_short = ell <= kVeryShortLength && kVeryShortTubeRadius >= k.rho1;
    d.shortest_geodesic = shortest && ell <= kShortestGeodesicLength && shortest_radius > k.rho1;

    if (d.short_with_tube) {
        d.applies = DrillingCriterion::short_with_tube;
        d.reason = "ell = " + detail::fmt(ell) + " <= h_max/2pi = " + detail::fmt(ell_max) + " and tube radius " +
                   detail::fmt(*tube_radius) + " >= " + detail::fmt(k.rho1);
    } else if (d.very_short) {
        d.applies = DrillingCriterion::very_short;
        d.reason = "ell = " + detail::fmt(ell) + " <= 0.111 forces tube radius >= 0.982 >= " + detail::fmt(k.rho1);
    } else if (d.shortest_geodesic) {
        d.applies = DrillingCriterion::shortest_geodesic;
        d.reason = "shortest geodesic with ell = " + detail::fmt(ell) + " <= 0.162 has tube radius >= log(3)/2 = " +
                   detail::fmt(shortest_radius);
    } else {
        d.reason = "no criterion applies to ell = " + detail::fmt(ell);
    }
    return d;
}

}  // namespace dehn
