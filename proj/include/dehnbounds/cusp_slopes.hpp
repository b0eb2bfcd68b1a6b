#pragma once

// Slopes on a flat cusp torus: normalized lengths, complete enumeration of
// the short ones, intersection numbers, and the resulting bounds on the
// number of exceptional fillings.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehnbounds/core.hpp"
#include "dehnbounds/envelopes.hpp"

namespace dehn {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Flat torus R^2 / (Z v1 + Z v2), the cusp cross-section.
class CuspShape {
public:
    CuspShape(Vec2 v1, Vec2 v2) : v1_(v1), v2_(v2) {
        const double a = std::abs(cross(v1, v2));
        if (!std::isfinite(a) || !(a > 0.0))
            throw DomainError("CuspShape: basis vectors must be finite and linearly independent");
    }

    /// Lattice (scale, scale * tau) for a modulus tau with Im(tau) > 0.
    static CuspShape from_modulus(double tau_re, double tau_im, double scale = 1.0) {
        detail::require_positive(tau_im, "CuspShape::from_modulus", "Im(tau)");
        detail::require_positive(scale, "CuspShape::from_modulus", "scale");
        return {Vec2{scale, 0.0}, Vec2{scale * tau_re, scale * tau_im}};
    }

    Vec2 v1() const { return v1_; }
    Vec2 v2() const { return v2_; }
    double area() const { return std::abs(cross(v1_, v2_)); }
    CuspShape scaled(double s) const { return {s * v1_, s * v2_}; }

private:
    Vec2 v1_;
    Vec2 v2_;
};

/// Primitive pair (p, q) up to sign, stored with q > 0, or q = 0 and p = 1.
class Slope {
public:
    Slope(std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0) throw std::invalid_argument("Slope: (0, 0) is not a slope");
        if (std::gcd(p, q) != 1)
            throw std::invalid_argument("Slope: (" + std::to_string(p) + ", " + std::to_string(q) +
                                        ") is not primitive");
        if (q < 0 || (q == 0 && p < 0)) {
            p = -p;
            q = -q;
        }
        p_ = p;
        q_ = q;
    }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    Vec2 vector(const CuspShape& s) const {
        return static_cast<double>(p_) * s.v1() + static_cast<double>(q_) * s.v2();
    }

    friend auto operator<=>(const Slope&, const Slope&) = default;

private:
    std::int64_t p_ = 1;
    std::int64_t q_ = 0;
};

/// Flat length divided by sqrt(area): invariant under scaling the torus.
inline double normalized_length(const Slope& s, const CuspShape& shape) {
    return s.vector(shape).norm() / std::sqrt(shape.area());
}

/// Minimal intersection number |p1 q2 - p2 q1|.
inline std::int64_t intersection_number(const Slope& a, const Slope& b) {
    const std::int64_t d = a.p() * b.q() - b.p() * a.q();
    return d < 0 ? -d : d;
}

/// Lagrange-Gauss reduced basis w_i = sum_j U(i, j) v_j with U unimodular.
struct ReducedBasis {
    Vec2 w1;
    Vec2 w2;
    std::array<std::array<std::int64_t, 2>, 2> U{{{1, 0}, {0, 1}}};
};

inline ReducedBasis reduce_basis(const CuspShape& shape) {
    ReducedBasis b{shape.v1(), shape.v2()};
    for (int iter = 0; iter < 10000; ++iter) {
        if (b.w1.dot(b.w1) > b.w2.dot(b.w2)) {
            std::swap(b.w1, b.w2);
            std::swap(b.U[0], b.U[1]);
        }
        const double mu = std::round(b.w1.dot(b.w2) / b.w1.dot(b.w1));
        if (mu == 0.0) break;
        const auto m = static_cast<std::int64_t>(mu);
        b.w2 = b.w2 - mu * b.w1;
        b.U[1][0] -= m * b.U[0][0];
        b.U[1][1] -= m * b.U[0][1];
    }
    return b;
}

/// All slopes with normalized length strictly below `bound`, sorted by (p, q).
///
/// Coefficients are bounded in the reduced basis through the dual vectors:
/// for x = a w1 + b w2, |a| <= |x| |w2| / area and |b| <= |x| |w1| / area.
inline std::vector<Slope> enumerate_short_slopes(const CuspShape& shape, double bound) {
    detail::require_positive(bound, "enumerate_short_slopes", "bound");
    const ReducedBasis rb = reduce_basis(shape);
    const double area = shape.area();
    const double max_len = bound * std::sqrt(area);
    const auto a_max = static_cast<std::int64_t>(std::floor(max_len * rb.w2.norm() / area));
    const auto b_max = static_cast<std::int64_t>(std::floor(max_len * rb.w1.norm() / area));

    std::set<Slope> found;
    for (std::int64_t a = -a_max; a <= a_max; ++a) {
        for (std::int64_t b = 0; b <= b_max; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const std::int64_t p = a * rb.U[0][0] + b * rb.U[1][0];
            const std::int64_t q = a * rb.U[0][1] + b * rb.U[1][1];
            const Slope s(p, q);
            if (normalized_length(s, shape) < bound) found.insert(s);
        }
    }
    return {found.begin(), found.end()};
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t smallest_prime_above(std::int64_t n) {
    std::int64_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

/// Exceptional slopes have pairwise intersection below threshold^2, hence at
/// most delta_max. Such a set has at most p + 1 elements, with p the smallest
/// prime above delta_max: 56 -> 59 -> 60 and 112 -> 113 -> 114.
struct ExceptionalCount {
    double threshold_sq = 0.0;
    std::int64_t delta_max = 0;
    std::int64_t prime = 0;
    std::int64_t bound = 0;
};

inline ExceptionalCount exceptional_count(Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    ExceptionalCount e;
    e.threshold_sq = critical_normalized_length_squared(cusp, ctx);
    e.delta_max = static_cast<std::int64_t>(std::ceil(e.threshold_sq)) - 1;
    e.prime = smallest_prime_above(e.delta_max);
    e.bound = e.prime + 1;
    return e;
}

inline std::int64_t exceptional_count_bound(Cusp cusp = Cusp::single, const Context& ctx = default_context()) {
    return exceptional_count(cusp, ctx).bound;
}

struct LengthIntersectionReport {
    std::size_t count = 0;
    std::int64_t max_delta = 0;
    double min_ratio = 0.0;  // min over pairs with delta > 0 of L(b) L(g) / delta
    std::size_t pairs = 0;
    bool holds = true;  // min_ratio >= 1 - 1e-12
};

/// Checks L(beta) L(gamma) >= Delta(beta, gamma) over all pairs of short slopes.
inline LengthIntersectionReport verify_length_intersection_inequality(const CuspShape& shape, double bound) {
    const std::vector<Slope> slopes = enumerate_short_slopes(shape, bound);
    std::vector<double> lengths;
    lengths.reserve(slopes.size());
    for (const Slope& s : slopes) lengths.push_back(normalized_length(s, shape));

    LengthIntersectionReport r;
    r.count = slopes.size();
    r.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        for (std::size_t j = i + 1; j < slopes.size(); ++j) {
            const std::int64_t d = intersection_number(slopes[i], slopes[j]);
            ++r.pairs;
            r.max_delta = std::max(r.max_delta, d);
            if (d > 0) r.min_ratio = std::min(r.min_ratio, lengths[i] * lengths[j] / static_cast<double>(d));
        }
    }
    r.holds = !(r.min_ratio < 1.0 - 1e-12);
    return r;
}

/// Seeded sampler of moduli tau in the standard fundamental domain
/// |tau| >= 1, |Re tau| <= 1/2, truncated at Im tau <= im_max. Uniform in
/// the Euclidean sense, by rejection. Uses its own double conversion so the
/// stream depends only on the seed.
class ShapeSampler {
public:
    explicit ShapeSampler(std::uint64_t seed, double im_max = 4.0) : rng_(seed), im_max_(im_max) {}

    CuspShape next() {
        for (;;) {
            const double re = uniform() - 0.5;
            const double im = std::sqrt(3.0) / 2.0 + uniform() * (im_max_ - std::sqrt(3.0) / 2.0);
            if (re * re + im * im >= 1.0) return CuspShape::from_modulus(re, im);
        }
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double im_max_;
};

}  // namespace dehn
