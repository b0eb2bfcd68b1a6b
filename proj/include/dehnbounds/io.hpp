#pragma once

// CSV and JSON serialization of the computed curves and reports, and parsing
// of cusp shapes.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dehnbounds/curves.hpp"
#include "dehnbounds/cusp_slopes.hpp"

namespace dehn::io {

using nlohmann::json;

/// Shortest round-trip text for a double, 17 significant digits, locale free.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

/// Numeric table with a header row. Lines starting with '#' are comments and
/// are written after the data rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
    for (const auto& c : t.comments) os << "# " << c << '\n';
}

inline CsvTable parse_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            t.header = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size())
            throw std::invalid_argument("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                                        std::to_string(t.header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline const std::vector<std::string>& envelope_columns() {
    static const std::vector<std::string> cols{"alpha",  "t",      "z_lo",      "z_hi",     "rho_lo",
                                               "ell_lo", "ell_hi", "V_drop_lo", "V_drop_hi"};
    return cols;
}

inline CsvTable envelope_table(const EnvelopeCurve& c) {
    CsvTable t;
    t.header = envelope_columns();
    for (const auto& s : c.samples)
        t.rows.push_back({s.alpha, s.t, s.z.lo, s.z.hi, s.rho_lo, s.ell.lo, s.ell.hi, s.v_drop.lo, s.v_drop.hi});
    if (c.truncated) t.comments.push_back("warning: " + c.warning);
    return t;
}

inline json envelope_json(const EnvelopeCurve& c) {
    json j;
    j["L_hat"] = c.L_hat;
    j["cusp"] = to_string(c.cusp);
    j["tolerances"] = {{"quad", c.quad_tol}, {"root", c.root_tol}};
    j["t_max"] = c.t_max;
    j["truncated"] = c.truncated;
    if (c.truncated) j["warning"] = c.warning;
    const auto& cols = envelope_columns();
    json rows = json::array();
    for (const auto& row : envelope_table(c).rows) {
        json r;
        for (std::size_t i = 0; i < cols.size(); ++i) r[cols[i]] = row[i];
        rows.push_back(std::move(r));
    }
    j["samples"] = std::move(rows);
    return j;
}

inline CsvTable volume_table(const std::vector<VolumeChangeResult>& rs) {
    CsvTable t;
    t.header = {"ell_hat", "dv_lo", "dv_hi", "nz"};
    for (const auto& r : rs) t.rows.push_back({r.ell_hat, r.delta_v.lo, r.delta_v.hi, r.nz_asymptote});
    return t;
}

inline json volume_json(const std::vector<VolumeChangeResult>& rs) {
    json rows = json::array();
    for (const auto& r : rs)
        rows.push_back({{"ell_hat", r.ell_hat},
                        {"z_hat", r.z_hat},
                        {"dv_lo", r.delta_v.lo},
                        {"dv_hi", r.delta_v.hi},
                        {"nz", r.nz_asymptote}});
    return {{"samples", rows}};
}

/// Malformed shape description; `field()` names the offending key.
class ShapeParseError : public std::runtime_error {
public:
    ShapeParseError(std::string field, const std::string& msg)
        : std::runtime_error("shape field '" + field + "': " + msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

namespace detail {
inline double number_at(const json& j, const std::string& field, std::size_t i) {
    if (!j.is_array() || j.size() != 2) throw ShapeParseError(field, "expected an array of two numbers");
    if (!j[i].is_number()) throw ShapeParseError(field, "entry " + std::to_string(i) + " is not a number");
    return j[i].get<double>();
}
}  // namespace detail

/// Accepts {"v1": [x, y], "v2": [x, y]} or {"tau": [re, im], "scale": s}.
inline CuspShape shape_from_json(const json& j) {
    if (!j.is_object()) throw ShapeParseError("<root>", "expected a JSON object");
    try {
        if (j.contains("v1") || j.contains("v2")) {
            for (const char* f : {"v1", "v2"})
                if (!j.contains(f)) throw ShapeParseError(f, "missing");
            const Vec2 v1{detail::number_at(j["v1"], "v1", 0), detail::number_at(j["v1"], "v1", 1)};
            const Vec2 v2{detail::number_at(j["v2"], "v2", 0), detail::number_at(j["v2"], "v2", 1)};
            return CuspShape(v1, v2);
        }
        if (j.contains("tau")) {
            double scale = 1.0;
            if (j.contains("scale")) {
                if (!j["scale"].is_number()) throw ShapeParseError("scale", "not a number");
                scale = j["scale"].get<double>();
            }
            return CuspShape::from_modulus(detail::number_at(j["tau"], "tau", 0), detail::number_at(j["tau"], "tau", 1),
                                           scale);
        }
    } catch (const DomainError& e) {
        throw ShapeParseError(j.contains("tau") ? "tau" : "v1", e.what());
    }
    throw ShapeParseError("v1", "need either v1/v2 or tau");
}

inline CuspShape shape_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ShapeParseError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return shape_from_json(j);
}

}  // namespace dehn::io
