// Command-line front end: constants table, envelope and volume curves,
// slope enumeration and the invariant suite.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dehnbounds/checks.hpp"
#include "dehnbounds/curves.hpp"
#include "dehnbounds/cusp_slopes.hpp"
#include "dehnbounds/io.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string format = "csv";
    std::string out;
    double tol_quad = 1e-10;
    double tol_root = 1e-12;
    std::uint64_t seed = 1;
    double perturb_c = 1.0;

    bool multi = false;
    double lhat = 0.0;
    int samples = 64;
    std::optional<double> ell;
    std::vector<double> sweep;
    std::string shape_file;
    std::optional<double> bound;
};

/// Fills every option the user did not pass on the command line from the
/// JSON config file, so that flags win over the file and the file over defaults.
void apply_config_file(const std::string& path, CLI::App& app, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file '" + path + "': expected a JSON object");

    auto unset = [&](const std::string& flag) { return app.get_option(flag)->count() == 0; };
    auto take = [&](const char* key, const std::string& flag, auto& dst) {
        if (!j.contains(key) || !unset(flag)) return;
        try {
            j.at(key).get_to(dst);
        } catch (const json::exception&) {
            throw UsageError(std::string("config key '") + key + "' has the wrong type");
        }
    };
    take("format", "--format", cfg.format);
    take("out", "--out", cfg.out);
    take("tol_quad", "--tol-quad", cfg.tol_quad);
    take("tol_root", "--tol-root", cfg.tol_root);
    take("seed", "--seed", cfg.seed);
    if (j.contains("samples") && app.get_subcommand("envelope")->get_option("-n")->count() == 0)
        j.at("samples").get_to(cfg.samples);
    if (j.contains("multi") && app.get_subcommand("envelope")->get_option("--multi")->count() == 0 &&
        app.get_subcommand("slopes")->get_option("--multi")->count() == 0)
        j.at("multi").get_to(cfg.multi);
}

void validate(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
    if (!(cfg.tol_quad > 0.0)) throw UsageError("--tol-quad must be positive");
    if (!(cfg.tol_root > 0.0)) throw UsageError("--tol-root must be positive");
    if (cfg.samples < 2) throw UsageError("sample count must be at least 2");
    if (!(cfg.perturb_c > 0.0)) throw UsageError("--perturb-c must be positive");
}

dehn::Context make_context(const RunConfig& cfg) {
    dehn::Context ctx;
    ctx.constants = dehn::PackingConstants::compute(cfg.perturb_c);
    ctx.quad_tol = cfg.tol_quad;
    ctx.root_tol = cfg.tol_root;
    return ctx;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int cmd_constants(const RunConfig& cfg, const dehn::Context& ctx, std::ostream& os) {
    const auto rows = dehn::constants_report(ctx);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.ok();
    if (cfg.format == "json") {
        json j;
        for (const auto& r : rows)
            j[r.name] = {{"computed", r.computed},
                         {"reference", r.reference},
                         {"abs_diff", r.abs_diff()},
                         {"tolerance", r.tolerance},
                         {"ok", r.ok()}};
        j["all_within_tolerance"] = ok;
        os << j.dump(2) << '\n';
    } else {
        os << "name,computed,reference,abs_diff,tolerance,ok\n";
        for (const auto& r : rows)
            os << r.name << ',' << dehn::io::format_double(r.computed) << ',' << dehn::io::format_double(r.reference)
               << ',' << dehn::io::format_double(r.abs_diff()) << ',' << dehn::io::format_double(r.tolerance) << ','
               << (r.ok() ? 1 : 0) << '\n';
    }
    if (!ok) std::cerr << "error: computed constants outside tolerance\n";
    return ok ? kExitOk : kExitUsage;
}

int cmd_envelope(const RunConfig& cfg, const dehn::Context& ctx, std::ostream& os) {
    const dehn::Cusp cusp = cfg.multi ? dehn::Cusp::multi : dehn::Cusp::single;
    const dehn::EnvelopeCurve c = dehn::sample_envelope(cfg.lhat, cusp, cfg.samples, ctx);
    if (cfg.format == "json")
        os << dehn::io::envelope_json(c).dump(2) << '\n';
    else
        dehn::io::write_csv(os, dehn::io::envelope_table(c));
    if (c.truncated) std::cerr << "warning: " << c.warning << '\n';
    return kExitOk;
}

int cmd_volume(const RunConfig& cfg, const dehn::Context& ctx, std::ostream& os) {
    std::vector<dehn::VolumeChangeResult> rs;
    if (cfg.ell) {
        rs.push_back(dehn::delta_v_bounds(*cfg.ell, ctx));
    } else {
        const double n = cfg.sweep[2];
        if (n < 1 || n != static_cast<int>(n)) throw UsageError("--sweep point count must be a positive integer");
        rs = dehn::volume_sweep(cfg.sweep[0], cfg.sweep[1], static_cast<int>(n), ctx);
    }
    if (cfg.format == "json")
        os << dehn::io::volume_json(rs).dump(2) << '\n';
    else
        dehn::io::write_csv(os, dehn::io::volume_table(rs));
    return kExitOk;
}

int cmd_slopes(const RunConfig& cfg, const dehn::Context& ctx, std::ostream& os) {
    std::ifstream in(cfg.shape_file);
    if (!in) throw UsageError("cannot open shape file '" + cfg.shape_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const dehn::CuspShape shape = dehn::io::shape_from_string(buf.str());
    const dehn::Cusp cusp = cfg.multi ? dehn::Cusp::multi : dehn::Cusp::single;
    const double bound = cfg.bound ? *cfg.bound : dehn::critical_normalized_length(cusp, ctx);

    const auto slopes = dehn::enumerate_short_slopes(shape, bound);
    const auto report = dehn::verify_length_intersection_inequality(shape, bound);
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& s : slopes)
            list.push_back({{"p", s.p()}, {"q", s.q()}, {"length", dehn::normalized_length(s, shape)}});
        json j{{"bound", bound},
               {"cusp", dehn::to_string(cusp)},
               {"count", report.count},
               {"max_delta", report.max_delta},
               {"exceptional_bound", dehn::exceptional_count_bound(cusp, ctx)},
               {"length_intersection_holds", report.holds},
               {"slopes", list}};
        if (report.pairs > 0 && report.max_delta > 0) j["min_ratio"] = report.min_ratio;
        os << j.dump(2) << '\n';
    } else {
        os << "p,q,length\n";
        for (const auto& s : slopes)
            os << s.p() << ',' << s.q() << ',' << dehn::io::format_double(dehn::normalized_length(s, shape)) << '\n';
        os << "# bound " << dehn::io::format_double(bound) << '\n';
        os << "# count " << report.count << '\n';
        os << "# max_delta " << report.max_delta << '\n';
        os << "# exceptional_bound " << dehn::exceptional_count_bound(cusp, ctx) << '\n';
    }
    return report.holds ? kExitOk : kExitInvariant;
}

int cmd_check(const RunConfig& cfg, const dehn::Context& ctx, std::ostream& os) {
    const auto results = dehn::run_invariant_suite(ctx, cfg.seed);
    const bool ok = dehn::all_passed(results);
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& r : results)
            list.push_back({{"group", r.group}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        os << json{{"seed", cfg.seed}, {"passed", ok}, {"results", list}}.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            os << (r.passed ? "PASS " : "FAIL ") << r.group << ": " << r.name;
            if (!r.detail.empty()) os << " (" << r.detail << ')';
            os << '\n';
        }
        os << (ok ? "all invariants hold" : "invariant failures") << " (seed " << cfg.seed << ")\n";
    }
    return ok ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;

    CLI::App app{"Quantitative bounds for hyperbolic Dehn filling"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "Write output to PATH instead of stdout");
    app.add_option("--tol-quad", cfg.tol_quad, "Quadrature tolerance");
    app.add_option("--tol-root", cfg.tol_root, "Root-finding tolerance");
    app.add_option("--seed", cfg.seed, "Seed for random shape sampling");
    app.add_option("--config", config_path, "JSON file with default option values");
    app.add_option("--perturb-c", cfg.perturb_c)->group("");

    auto* constants = app.add_subcommand("constants", "Computed constants against reference values");
    auto* envelope = app.add_subcommand("envelope", "Sample the tube-radius, core-length and volume envelopes");
    envelope->add_option("--lhat", cfg.lhat, "Normalized length of the filling slope")->required();
    envelope->add_flag("--multi", cfg.multi, "Use the multi-cusp area bound");
    envelope->add_option("-n", cfg.samples, "Number of samples");
    auto* volume = app.add_subcommand("volume", "Volume change bounds from the core length");
    auto* ell_opt = volume->add_option("--ell", cfg.ell, "Core length at cone angle 2pi");
    auto* sweep_opt = volume->add_option("--sweep", cfg.sweep, "LO HI N")->expected(3);
    ell_opt->excludes(sweep_opt);
    volume->require_option(1);
    auto* slopes = app.add_subcommand("slopes", "Enumerate short slopes on a cusp torus");
    slopes->add_option("--shape", cfg.shape_file, "Shape JSON file")->required();
    slopes->add_option("--bound", cfg.bound, "Normalized length bound (default: the universal threshold)");
    slopes->add_flag("--multi", cfg.multi, "Default to the multi-cusp threshold");
    auto* check = app.add_subcommand("check", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!config_path.empty()) apply_config_file(config_path, app, cfg);
        validate(cfg);
        const dehn::Context ctx = make_context(cfg);
        Output out(cfg.out);
        std::ostream& os = out.stream();
        if (constants->parsed()) return cmd_constants(cfg, ctx, os);
        if (envelope->parsed()) return cmd_envelope(cfg, ctx, os);
        if (volume->parsed()) return cmd_volume(cfg, ctx, os);
        if (slopes->parsed()) return cmd_slopes(cfg, ctx, os);
        if (check->parsed()) return cmd_check(cfg, ctx, os);
    } catch (const dehn::io::ShapeParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
