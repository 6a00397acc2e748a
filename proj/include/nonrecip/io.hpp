#pragma once

// JSON parameter files, JSON reports and CSV datasets.
//
// Parameter files are flat key/value objects. Complex values are written as
// {"re": x, "im": y}; a bare number is accepted on input. Every report
// carries "schema_version".

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "nonrecip/core_types.hpp"
#include "nonrecip/isolator_design.hpp"
#include "nonrecip/steady_state.hpp"
#include "nonrecip/sweep.hpp"

namespace nonrecip {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object() && j.contains("re") && j.contains("im") && j.size() == 2 &&
        j["re"].is_number() && j["im"].is_number()) {
        return {j["re"].get<double>(), j["im"].get<double>()};
    }
    throw ConfigError("'" + key + "' must be a number or {\"re\", \"im\"} pair");
}

namespace io_detail {

inline double number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError("'" + key + "' must be a number");
    return obj[key].get<double>();
}

inline Complex complex(const json& obj, const std::string& key) {
    if (!obj.contains(key)) return {0.0, 0.0};
    return complex_from_json(obj[key], key);
}

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                           const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

}  // namespace io_detail

inline json to_json(const ModelParams& p) {
    return json{
        {"schema_version", kSchemaVersion},
        {"unit", std::string(to_string(p.unit.reference))},
        {"unit_value", p.unit.value},
        {"kappa1", p.kappa1},
        {"kappa2", p.kappa2},
        {"gamma", p.gamma},
        {"f", p.f},
        {"G1", p.G1},
        {"G2", p.G2},
        {"theta", p.theta},
        {"J1", p.J1},
        {"J2", complex_to_json(p.J2)},
        {"phi", p.phi},
        {"J3", complex_to_json(p.J3)},
    };
}

/// Reads a ModelParams object; phases are wrapped into [0, 2*pi).
inline ModelParams model_params_from_json(const json& j) {
    using namespace io_detail;
    reject_unknown(j,
                   {"schema_version", "unit", "unit_value", "kappa1", "kappa2", "gamma", "f", "G1",
                    "G2", "theta", "J1", "J2", "phi", "J3"},
                   "model parameters");
    ModelParams p;
    if (j.contains("unit")) {
        if (!j["unit"].is_string()) throw ConfigError("'unit' must be a string");
        p.unit.reference = parse_rate_reference(j["unit"].get<std::string>());
    }
    p.unit.value = number(j, "unit_value", 1.0);
    p.kappa1 = number(j, "kappa1", 0.0);
    p.kappa2 = number(j, "kappa2", 0.0);
    p.gamma = number(j, "gamma", 0.0);
    p.f = number(j, "f", 0.0);
    p.G1 = number(j, "G1", 0.0);
    p.G2 = number(j, "G2", 0.0);
    p.theta = number(j, "theta", 0.0);
    p.J1 = number(j, "J1", 0.0);
    p.J2 = complex(j, "J2");
    p.phi = number(j, "phi", 0.0);
    p.J3 = complex(j, "J3");
    return canonicalize(p);
}

inline json to_json(const BareParams& p) {
    return json{{"Delta1", p.Delta1}, {"Delta2", p.Delta2}, {"Delta_en", p.Delta_en},
                {"omega_m", p.omega_m}, {"g1", p.g1},        {"g2", p.g2},
                {"J1", p.J1},           {"J2", complex_to_json(p.J2)},
                {"J3", complex_to_json(p.J3)},              {"kappa1", p.kappa1},
                {"kappa2", p.kappa2},   {"gamma", p.gamma},  {"f", p.f}};
}

inline BareParams bare_params_from_json(const json& j) {
    using namespace io_detail;
    reject_unknown(j,
                   {"Delta1", "Delta2", "Delta_en", "omega_m", "g1", "g2", "J1", "J2", "J3",
                    "kappa1", "kappa2", "gamma", "f"},
                   "bare parameters");
    BareParams p;
    p.Delta1 = number(j, "Delta1", 0.0);
    p.Delta2 = number(j, "Delta2", 0.0);
    p.Delta_en = number(j, "Delta_en", 0.0);
    p.omega_m = number(j, "omega_m", 1.0);
    p.g1 = number(j, "g1", 0.0);
    p.g2 = number(j, "g2", 0.0);
    p.J1 = number(j, "J1", 0.0);
    p.J2 = complex(j, "J2");
    p.J3 = complex(j, "J3");
    p.kappa1 = number(j, "kappa1", 0.0);
    p.kappa2 = number(j, "kappa2", 0.0);
    p.gamma = number(j, "gamma", 0.0);
    p.f = number(j, "f", 0.0);
    return p;
}

inline json to_json(const Drives& d) {
    return json{{"E1", complex_to_json(d.E1)},
                {"E2", complex_to_json(d.E2)},
                {"Ep1", d.Ep1},
                {"Ep2", d.Ep2},
                {"delta", d.delta}};
}

inline Drives drives_from_json(const json& j) {
    using namespace io_detail;
    reject_unknown(j, {"E1", "E2", "Ep1", "Ep2", "delta"}, "drives");
    Drives d;
    d.E1 = complex(j, "E1");
    d.E2 = complex(j, "E2");
    d.Ep1 = number(j, "Ep1", 0.0);
    d.Ep2 = number(j, "Ep2", 0.0);
    d.delta = number(j, "delta", 0.0);
    return d;
}

inline SolverConfig solver_config_from_json(const json& j) {
    using namespace io_detail;
    reject_unknown(j, {"tol", "max_iter", "damping"}, "solver");
    SolverConfig c;
    c.tol = number(j, "tol", c.tol);
    c.max_iter = static_cast<int>(number(j, "max_iter", c.max_iter));
    c.damping = number(j, "damping", c.damping);
    return c;
}

inline json to_json(const SteadyState& s) {
    return json{{"alpha1", complex_to_json(s.alpha1)},
                {"alpha2", complex_to_json(s.alpha2)},
                {"rho", complex_to_json(s.rho)},
                {"beta", complex_to_json(s.beta)},
                {"Delta1_eff", s.Delta1_eff},
                {"Delta2_eff", s.Delta2_eff},
                {"residual_norm", s.residual_norm},
                {"iterations", s.iterations}};
}

inline json to_json(const RCoefficients& r) {
    return json{{"R1", r.R1}, {"R2", r.R2}, {"R2_prime", r.R2p}, {"R3", r.R3}, {"R4", r.R4},
                {"R5", r.R5}, {"R6", r.R6}, {"R7", r.R7},        {"R8", r.R8}, {"R9", r.R9}};
}

inline json to_json(const DesignCandidate& c) {
    json j{{"J3", complex_to_json(c.J3)},
           {"branch", {{"outer", c.root.outer}, {"inner", c.root.inner}}},
           {"phase_rotated", c.phase_rotated},
           {"J2", complex_to_json(c.J2.value)},
           {"J2_mag", c.J2.magnitude},
           {"J2_imaginary_residue", c.J2.imaginary_residue}};
    auto num_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    j["T12_at_resonance"] = num_or_null(c.T12_at_resonance);
    j["T21_at_resonance"] = num_or_null(c.T21_at_resonance);
    j["valid"] = c.valid;
    j["direction"] = std::string(to_string(c.direction));
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json to_json(const IsolatorDesign& d) {
    json cands = json::array();
    for (const auto& c : d.candidates) cands.push_back(to_json(c));
    json j{{"schema_version", kSchemaVersion},
           {"rates",
            {{"kappa1", d.rates.kappa1},
             {"kappa2", d.rates.kappa2},
             {"gamma", d.rates.gamma},
             {"f", d.rates.f}}},
           {"G1", d.G1},
           {"G2", d.G2},
           {"J1", d.J1},
           {"R", to_json(d.r)},
           {"candidates", cands}};
    if (d.chosen) {
        j["chosen"] = *d.chosen;
        j["params"] = to_json(d.candidates[*d.chosen].params);
    } else {
        j["chosen"] = nullptr;
    }
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// 17 significant digits in scientific notation, locale independent.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

/// Header row, then one LF-terminated row per grid point; failed points
/// keep their axes and status with empty observable cells.
inline void write_csv(const Dataset& ds, std::ostream& out) {
    std::string line;
    for (const auto& n : ds.axis_names) line += n + ",";
    for (const auto& n : ds.observable_names) line += n + ",";
    line += "status\n";
    out << line;
    for (const auto& row : ds.rows) {
        line.clear();
        for (double a : row.axes) line += format_number(a) + ",";
        for (const auto& v : row.values) {
            if (v) line += format_number(*v);
            line += ",";
        }
        line += row.status;
        line += "\n";
        out << line;
    }
}

inline std::string to_csv(const Dataset& ds) {
    std::ostringstream s;
    write_csv(ds, s);
    return s.str();
}

inline json to_json(const Dataset& ds) {
    json cols = json::array();
    for (const auto& n : ds.axis_names) cols.push_back(n);
    for (const auto& n : ds.observable_names) cols.push_back(n);
    cols.push_back("status");
    json rows = json::array();
    for (const auto& row : ds.rows) {
        json r = json::array();
        for (double a : row.axes) r.push_back(a);
        for (const auto& v : row.values) r.push_back(v ? json(*v) : json(nullptr));
        r.push_back(row.status);
        rows.push_back(std::move(r));
    }
    return json{{"schema_version", kSchemaVersion}, {"columns", cols}, {"rows", rows}};
}

}  // namespace nonrecip
