#pragma once

// Reference-value comparison and the cross-module invariant suite behind the
// `constants` and `check` commands.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dehnbounds/boundary_terms.hpp"
#include "dehnbounds/curves.hpp"
#include "dehnbounds/cusp_slopes.hpp"
#include "dehnbounds/envelopes.hpp"
#include "dehnbounds/scalar_bounds.hpp"
#include "dehnbounds/tube_packing.hpp"
#include "dehnbounds/volume_bounds.hpp"

namespace dehn {

struct ConstantRow {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;

    double abs_diff() const { return std::abs(computed - reference); }
    bool ok() const { return abs_diff() <= tolerance; }
};

inline std::vector<ConstantRow> constants_report(const Context& ctx = default_context()) {
    const PackingConstants& k = ctx.constants;
    return {
        {"S", k.S, 1.0 / 0.980258, 1e-5},
        {"C_single", k.C_single, 3.3957, 5e-5},
        {"h_max", k.h_max, 1.019675, 1e-5},
        {"r_at_hmax", k.r_at_hmax, 0.5306375, 1e-3},
        {"z_at_hmax", k.z_at_hmax, 0.485868, 1e-6},
        {"threshold_sq", critical_normalized_length_squared(Cusp::single, ctx), 56.4696, 0.05},
        {"threshold", critical_normalized_length(Cusp::single, ctx), 7.5146, 5e-3},
        {"threshold_multi", critical_normalized_length(Cusp::multi, ctx), 10.6273, 1e-2},
        {"length_monotone_radius", length_monotone_radius(), 0.65848, 1e-5},
        {"alpha_ell_monotone_radius", alpha_ell_monotone_threshold(), 0.4407, 1e-4},
        {"ell_max", k.h_max / two_pi, 0.1623, 1e-4},
        {"delta_v_max", delta_v_bounds(k.h_max / two_pi, ctx).delta_v.hi, 0.3287, 1e-3},
        {"min_volume", min_volume_after_filling(kMinCuspedVolume, ctx), 1.701, 2e-3},
        {"exceptional_single", static_cast<double>(exceptional_count_bound(Cusp::single, ctx)), 60.0, 0.0},
        {"exceptional_multi", static_cast<double>(exceptional_count_bound(Cusp::multi, ctx)), 114.0, 0.0},
    };
}

struct CheckResult {
    std::string group;
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

class Recorder {
public:
    explicit Recorder(std::vector<CheckResult>& out) : out_(out) {}

    void group(std::string g) { group_ = std::move(g); }

    void expect(const std::string& name, bool ok, const std::string& detail = {}) {
        out_.push_back({group_, name, ok, detail});
    }

    /// Runs `body`, recording an exception as a failure of `name`.
    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            expect(name, false, std::string("threw: ") + e.what());
        }
    }

private:
    std::vector<CheckResult>& out_;
    std::string group_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace detail

/// Every cross-module invariant that can be evaluated without test oracles.
inline std::vector<CheckResult> run_invariant_suite(const Context& ctx = default_context(), std::uint64_t seed = 1) {
    const PackingConstants& k = ctx.constants;
    std::vector<CheckResult> out;
    detail::Recorder rec(out);

    rec.group("constants");
    rec.guarded("reference values", [&] {
        for (const ConstantRow& row : constants_report(ctx))
            rec.expect(row.name, row.ok(), "computed " + detail::fmt(row.computed) + " vs " + detail::fmt(row.reference));
    });

    rec.group("scalar_bounds");
    rec.guarded("scalar", [&] {
        bool decreasing = true;
        double prev = h(k.r_at_hmax, k);
        for (int i = 1; i <= 400; ++i) {
            const double r = k.r_at_hmax + 0.025 * i;
            const double v = h(r, k);
            decreasing = decreasing && v < prev;
            prev = v;
        }
        rec.expect("h decreasing beyond the hump", decreasing);

        double worst = 0.0;
        for (double r = 0.531; r <= 10.0; r += 0.0947) worst = std::max(worst, std::abs(h_inverse(h(r, k), k) - r));
        rec.expect("h_inverse round trip", worst < 1e-9, "max error " + detail::fmt(worst));

        double id_err = 0.0;
        for (Cusp c : {Cusp::single, Cusp::multi})
            for (int i = 0; i <= 200; ++i) {
                const double z = 0.1 + (0.9 - 1e-6) * i / 200.0;
                const double lhs = dH_dz(z, c, k) / (H(z, c, k) + G(z, c, k));
                id_err = std::max(id_err, detail::rel_err(lhs, F(z) + 1.0 / (1.0 - z)));
            }
        rec.expect("H'/(H+G) = F + 1/(1-z)", id_err < 1e-10, "max rel error " + detail::fmt(id_err));

        bool positive = true;
        const double z_min = std::tanh(alpha_ell_monotone_threshold());
        for (int i = 0; i < 200; ++i) {
            const double z = z_min + (1.0 - z_min) * i / 200.0;
            positive = positive && H(z, Cusp::single, k) - Gtilde(z, Cusp::single, k) > 0.0;
        }
        rec.expect("H - Gtilde > 0", positive);
    });

    rec.group("boundary_terms");
    rec.guarded("boundary", [&] {
        double disc = 0.0;
        double b00 = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 1; j <= 20; ++j) {
                const double R = 0.3 + 2.7 * i / 19.0;
                const double alpha = two_pi * j / 20.0;
                const double m = alpha * std::sinh(R);
                const FluxCoefficients f = flux_coefficients(R, alpha);
                disc = std::max(disc, detail::rel_err(-f.discriminant(), std::pow(std::tanh(R), 2) / std::pow(m, 4)));
                b00 = std::max(b00, detail::rel_err(b00_upper(R, m), f.maximum()));
            }
        rec.expect("b^2 - 4ac = tanh^2 R / m^4", disc < 1e-12, "max rel error " + detail::fmt(disc));
        rec.expect("b00_upper is the completed square", b00 < 1e-12, "max rel error " + detail::fmt(b00));

        double asym = 0.0;
        double trace = 0.0;
        for (double r = 0.1; r < 5.0; r += 0.1)
            for (auto kind : {StandardFormKind::meridian, StandardFormKind::longitude}) {
                const StandardFormMatrix w = standard_form(kind, r);
                asym = std::max(asym, w.max_asymmetry());
                trace = std::max(trace, std::abs(w.trace()));
            }
        rec.expect("standard forms symmetric and traceless", asym < 1e-14 && trace < 1e-14);

        const double R0 = length_monotone_radius();
        rec.expect("dl/dalpha lower endpoint vanishes at arcsinh(1/sqrt 2)",
                   std::abs(dl_dalpha_bounds(0.1, 1.0, R0).lo) < 1e-12);
    });

    rec.group("tube_packing");
    rec.guarded("packing", [&] {
        double worst = 0.0;
        for (double R = 0.3; R < 5.0; R += 0.1)
            worst = std::max(worst, detail::rel_err(torus_area_lower_bound(R, Cusp::single, k) /
                                                        (std::sinh(R) * std::cosh(R)),
                                                    h(R, k)));
        rec.expect("area bound / (sinh cosh) = h", worst < 1e-12);

        bool contained = true;
        for (double R : {0.55, 0.8, 1.2}) {
            const EllipseAxes e = inscribed_ellipse_axes(R, k);
            for (int i = 0; i < 64; ++i) {
                const double phi = two_pi * i / 64.0;
                const double zeta = e.a_axis * std::cos(phi) / std::cosh(R);
                const double theta = e.b_axis * std::sin(phi) / std::sinh(R);
                contained = contained && ball_projection_contains(2.0 * R, R, theta, zeta);
            }
        }
        rec.expect("inscribed ellipse inside projected ball", contained);
    });

    rec.group("deformation_envelopes");
    rec.guarded("envelopes", [&] {
        const double L = 7.515;
        const EnvelopeCurve c = sample_envelope(L, Cusp::single, 24, ctx);
        bool above = !c.truncated;
        for (const EnvelopeSample& s : c.samples) above = above && s.z.lo >= k.z1;
        rec.expect("L = 7.515 keeps z >= z1 up to 2pi", above);
        rec.expect("tube radius at 2pi >= rho1", tube_radius_lower(two_pi, L, Cusp::single, ctx) >= k.rho1);
        rec.expect("core length at 2pi <= h_max/2pi",
                   core_length_bracket(two_pi, L, Cusp::single, ctx).hi <= k.h_max / two_pi);
        rec.expect("L = 7.40 truncates before 2pi", envelope_validity_limit(7.40, Cusp::single, ctx) < two_pi * two_pi);
        const double ratio = critical_normalized_length(Cusp::multi, ctx) / critical_normalized_length(Cusp::single, ctx);
        rec.expect("multi/single threshold = sqrt 2", std::abs(ratio - std::sqrt(2.0)) < 1e-12);
    });

    rec.group("volume_bounds");
    rec.guarded("volume", [&] {
        const double ell_max = k.h_max / two_pi;
        const double up = volume_drop_integral(k.z1, VolumeSide::upper, Cusp::single, ctx);
        rec.expect("upper volume integral from z1", std::abs(up - 0.3287) < 1e-3, detail::fmt(up));
        for (double ell : {1e-4}) {
            const VolumeChangeResult r = delta_v_bounds(ell, ctx);
            rec.expect("small-ell asymptote",
                       r.delta_v.lo / r.nz_asymptote > 0.95 && r.delta_v.hi / r.nz_asymptote < 1.05);
        }
        bool monotone = true;
        double prev_lo = 0.0;
        double prev_hi = 0.0;
        for (const VolumeChangeResult& r : volume_sweep(1e-3, ell_max, 40, ctx)) {
            monotone = monotone && r.delta_v.lo > prev_lo && r.delta_v.hi > prev_hi;
            prev_lo = r.delta_v.lo;
            prev_hi = r.delta_v.hi;
        }
        rec.expect("volume bracket increasing in ell", monotone);
        rec.expect("max upper bound < 0.329", prev_hi < 0.329);
    });

    rec.group("cusp_slopes");
    rec.guarded("slopes", [&] {
        const double b1 = critical_normalized_length(Cusp::single, ctx);
        const double b2 = critical_normalized_length(Cusp::multi, ctx);
        const std::int64_t n1 = exceptional_count_bound(Cusp::single, ctx);
        const std::int64_t n2 = exceptional_count_bound(Cusp::multi, ctx);
        const std::int64_t d1 = exceptional_count(Cusp::single, ctx).delta_max;
        ShapeSampler sampler(seed);
        bool counts = true;
        bool deltas = true;
        bool lengths = true;
        for (int i = 0; i < 100; ++i) {
            const CuspShape s = sampler.next();
            const LengthIntersectionReport r1 = verify_length_intersection_inequality(s, b1);
            counts = counts && static_cast<std::int64_t>(r1.count) <= n1 &&
                     static_cast<std::int64_t>(enumerate_short_slopes(s, b2).size()) <= n2;
            deltas = deltas && r1.max_delta <= d1;
            lengths = lengths && r1.holds;
        }
        rec.expect("short slope counts within bounds (seed " + std::to_string(seed) + ")", counts);
        rec.expect("pairwise intersection <= delta_max", deltas);
        rec.expect("L(b) L(g) >= Delta", lengths);
    });
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace dehn
