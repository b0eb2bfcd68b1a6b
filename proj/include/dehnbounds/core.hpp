#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dehn {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Which area bound the tube boundary torus satisfies: two disjoint packed
/// ellipses (a single cusp, or the first of several) or only one.
enum class Cusp { single, multi };

inline const char* to_string(Cusp c) { return c == Cusp::single ? "single" : "multi"; }

/// Raised when an argument lies outside the domain on which a formula holds.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The deformation left the region z >= z1 where the differential
/// inequalities hold. `t_max` is the first parameter value t = alpha^2 at
/// which the lower z-envelope reaches z1.
class HumpExceeded : public DomainError {
public:
    HumpExceeded(const std::string& what, double t_max) : DomainError(what), t_max_(t_max) {}
    double t_max() const noexcept { return t_max_; }

private:
    double t_max_;
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline void require(bool ok, const char* where, const std::string& msg) {
    if (!ok) throw DomainError(std::string(where) + ": " + msg);
}

inline void require_positive(double x, const char* where, const char* name) {
    require(std::isfinite(x) && x > 0.0, where, std::string(name) + " must be positive and finite, got " + fmt(x));
}

inline void require_cone_angle(double alpha, const char* where) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= two_pi * (1.0 + 1e-15), where,
            "cone angle must lie in (0, 2pi], got " + fmt(alpha));
}

}  // namespace detail

/// Ordered pair lo <= hi used for every two-sided bound.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    Bracket() = default;
    Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo_ <= hi_)) throw DomainError("Bracket: lo > hi (" + detail::fmt(lo_) + " > " + detail::fmt(hi_) + ")");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

}  // namespace dehn
