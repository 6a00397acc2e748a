#pragma once

// Grid evaluation of transmission observables over one or two parameter axes.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nonrecip/core_types.hpp"
#include "nonrecip/transmission.hpp"

namespace nonrecip {

enum class ParameterPath {
    y, theta, phi, kappa1, kappa2, gamma, f, G1, G2, J1, J2, J2_re, J2_im, J3_re, J3_im
};

inline ParameterPath parse_parameter_path(std::string_view name) {
    static constexpr std::pair<std::string_view, ParameterPath> table[] = {
        {"y", ParameterPath::y},         {"theta", ParameterPath::theta},
        {"phi", ParameterPath::phi},     {"kappa1", ParameterPath::kappa1},
        {"kappa2", ParameterPath::kappa2}, {"gamma", ParameterPath::gamma},
        {"f", ParameterPath::f},         {"G1", ParameterPath::G1},
        {"G2", ParameterPath::G2},       {"J1", ParameterPath::J1},
        {"J2", ParameterPath::J2},       {"J2.re", ParameterPath::J2_re},
        {"J2.im", ParameterPath::J2_im}, {"J3.re", ParameterPath::J3_re},
        {"J3.im", ParameterPath::J3_im},
    };
    for (const auto& [key, path] : table) {
        if (key == name) return path;
    }
    throw InvalidParameterPath("unknown parameter path '" + std::string(name) + "'");
}

/// Writes `value` into the field named by `path`; y lives outside ModelParams.
inline void assign(ModelParams& p, double& y, ParameterPath path, double value) {
    switch (path) {
        case ParameterPath::y: y = value; break;
        case ParameterPath::theta: p.theta = value; break;
        case ParameterPath::phi: p.phi = value; break;
        case ParameterPath::kappa1: p.kappa1 = value; break;
        case ParameterPath::kappa2: p.kappa2 = value; break;
        case ParameterPath::gamma: p.gamma = value; break;
        case ParameterPath::f: p.f = value; break;
        case ParameterPath::G1: p.G1 = value; break;
        case ParameterPath::G2: p.G2 = value; break;
        case ParameterPath::J1: p.J1 = value; break;
        case ParameterPath::J2: p.J2 = value; break;
        case ParameterPath::J2_re: p.J2.real(value); break;
        case ParameterPath::J2_im: p.J2.imag(value); break;
        case ParameterPath::J3_re: p.J3.real(value); break;
        case ParameterPath::J3_im: p.J3.imag(value); break;
    }
}

enum class Observable { T12, T21, isolation_db };

inline std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::T12: return "T12";
        case Observable::T21: return "T21";
        case Observable::isolation_db: return "isolation_db";
    }
    return "?";
}

inline Observable parse_observable(std::string_view s) {
    if (s == "T12") return Observable::T12;
    if (s == "T21") return Observable::T21;
    if (s == "isolation_db") return Observable::isolation_db;
    throw InvalidInput("unknown observable '" + std::string(s) + "'");
}

struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    /// Linear grid; a single point sits at `start`.
    double at(int i) const {
        if (points == 1) return start;
        if (i == points - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
};

struct SweepSpec {
    Axis axis1;
    std::optional<Axis> axis2;
    ModelParams fixed;
    double y = 0.0;  // probe detuning when y is not swept
    std::vector<Observable> observables{Observable::T12, Observable::T21};
};

inline ValidationReport validate_sweep(const SweepSpec& s) {
    ValidationReport r;
    auto check_axis = [&](const Axis& a) {
        if (a.points < 1) r.violations.push_back("axis '" + a.name + "' points >= 1");
        if (!std::isfinite(a.start) || !std::isfinite(a.stop)) {
            r.violations.push_back("axis '" + a.name + "' bounds finite");
        } else if (a.start > a.stop) {
            r.violations.push_back("axis '" + a.name + "' start <= stop");
        }
        parse_parameter_path(a.name);
    };
    check_axis(s.axis1);
    if (s.axis2) check_axis(*s.axis2);
    if (s.observables.empty()) r.violations.push_back("at least one observable");
    return r;
}

struct DataRow {
    std::vector<double> axes;
    std::vector<std::optional<double>> values;  // empty cells for failed points
    std::string status = "ok";
};

struct Dataset {
    std::vector<std::string> axis_names;
    std::vector<std::string> observable_names;
    std::vector<DataRow> rows;
};

/// Worker count from NONRECIP_THREADS (0 or unset: hardware concurrency).
inline unsigned thread_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("NONRECIP_THREADS")) {
        n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

inline DataRow evaluate_point(const ModelParams& p, double y, const std::vector<Observable>& obs) {
    DataRow row;
    row.values.assign(obs.size(), std::nullopt);
    try {
        const auto tp = transmission_pair(p, y);
        const auto m = isolation_metrics(tp);
        for (std::size_t k = 0; k < obs.size(); ++k) {
            switch (obs[k]) {
                case Observable::T12: row.values[k] = tp.T12; break;
                case Observable::T21: row.values[k] = tp.T21; break;
                case Observable::isolation_db: row.values[k] = m.isolation_db; break;
            }
        }
    } catch (const SingularMatrix&) {
        row.status = "singular";
    } catch (const InvalidInput&) {
        row.status = "invalid";
    }
    return row;
}

/// Evaluates the grid with axis2 as the outer loop and axis1 inner. Points
/// at a response pole are kept with status "singular" and empty cells.
inline Dataset sweep(const SweepSpec& spec, unsigned threads = 0) {
    if (auto r = validate_sweep(spec); !r.ok()) throw InvalidInput("sweep: " + r.summary());
    const ParameterPath p1 = parse_parameter_path(spec.axis1.name);
    const std::optional<ParameterPath> p2 =
        spec.axis2 ? std::optional(parse_parameter_path(spec.axis2->name)) : std::nullopt;
    const int n1 = spec.axis1.points;
    const int n2 = spec.axis2 ? spec.axis2->points : 1;
    const std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);

    Dataset ds;
    ds.axis_names.push_back(spec.axis1.name);
    if (spec.axis2) ds.axis_names.push_back(spec.axis2->name);
    for (auto o : spec.observables) ds.observable_names.emplace_back(to_string(o));
    ds.rows.resize(total);

    auto work = [&](std::size_t idx) {
        const int i1 = static_cast<int>(idx % static_cast<std::size_t>(n1));
        const int i2 = static_cast<int>(idx / static_cast<std::size_t>(n1));
        ModelParams p = spec.fixed;
        double y = spec.y;
        const double v1 = spec.axis1.at(i1);
        assign(p, y, p1, v1);
        DataRow row;
        if (p2) {
            const double v2 = spec.axis2->at(i2);
            assign(p, y, *p2, v2);
            row = evaluate_point(p, y, spec.observables);
            row.axes = {v1, v2};
        } else {
            row = evaluate_point(p, y, spec.observables);
            row.axes = {v1};
        }
        ds.rows[idx] = std::move(row);
    };

    if (threads == 0) threads = thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
        return ds;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) work(i);
        });
    }
    pool.clear();  // joins
    return ds;
}

}  // namespace nonrecip
