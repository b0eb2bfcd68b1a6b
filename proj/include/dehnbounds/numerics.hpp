#pragma once

// Quadrature and one-dimensional root finding shared by the bound modules.

#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dehnbounds/core.hpp"

namespace dehn::numerics {

namespace detail {

template <class Func>
double integrate_adaptive(Func& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    if (err <= tol || depth == 0) return value;
    const double mid = 0.5 * (a + b);
    return integrate_adaptive(f, a, mid, 0.5 * tol, depth - 1) + integrate_adaptive(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod on [a, b] with an absolute error target.
/// Boost's own adaptive driver measures the tolerance relative to the
/// running estimate, which never terminates for integrals that vanish.
template <class Func>
double integrate(Func&& f, double a, double b, double abs_tol = 1e-10) {
    if (a == b) return 0.0;
    const double value = detail::integrate_adaptive(f, a, b, abs_tol, 30);
    if (!std::isfinite(value))
        throw DomainError("integrate: non-finite result on [" + dehn::detail::fmt(a) + ", " + dehn::detail::fmt(b) +
                          "]");
    return value;
}

/// Bisection for an increasing function `f` on [lo, hi]: returns x with
/// f(x) = target up to |hi - lo| <= tol. The caller guarantees
/// f(lo) <= target <= f(hi).
template <class Func>
double bisect_increasing(Func&& f, double target, double lo, double hi, double tol) {
    for (int i = 0; i < 400 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Same as bisect_increasing for a decreasing function.
template <class Func>
double bisect_decreasing(Func&& f, double target, double lo, double hi, double tol) {
    return bisect_increasing([&](double x) { return -f(x); }, -target, lo, hi, tol);
}

/// Bisection on log(x) for an increasing function of a positive variable;
/// converges in relative rather than absolute terms, which matters when the
/// root is a tiny gap such as 1 - z.
template <class Func>
double bisect_increasing_log(Func&& f, double target, double lo, double hi, double rel_tol) {
    double a = std::log(lo);
    double b = std::log(hi);
    const double x = bisect_increasing([&](double s) { return f(std::exp(s)); }, target, a, b, rel_tol);
    return std::exp(x);
}

}  // namespace dehn::numerics
