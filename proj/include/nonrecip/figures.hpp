#pragma once

// Named parameter presets for transmission datasets and the
// regression outputs generated from them.
//
// fig2        theta x phi density maps at y = 0 (gamma units)
// fig3a..h    spectra for theta = phi = m*pi/4, m = 0..7 (gamma units)
// fig4a..d    spectra for |J2| in {0.01, 0.1, 0.3, 0.5}, theta = phi = pi/2
// fig4e..h    spectra for J3 in {0.476, 1.476, 2.476, 4.476} * i
// fig5a..c    designed isolator, f in {0.1, 1, 5}, branch (+,+) (kappa2 units)
// fig6a..c    same, branch (-,-)
// fig7a..d    designed isolator, gamma in {0.001, 0.01, 0.1, 1}, branch (+,+)
// fig8a..d    same, branch (-,-)

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/io.hpp"
#include "nonrecip/isolator_design.hpp"
#include "nonrecip/sweep.hpp"

namespace nonrecip {

enum class FigureKind { phasemap, spectrum };

struct BranchDesign {
    DesignRates rates;
    int outer = 1;
    int inner = 1;
};

struct FigurePreset {
    std::string id;
    FigureKind kind = FigureKind::spectrum;
    ModelParams params;
    std::optional<BranchDesign> design;  // set for the designed-isolator figures
    double y_min = -5.0;
    double y_max = 5.0;
    int points = 1001;  // per axis
};

inline constexpr int kDefaultSpectrumPoints = 1001;
inline constexpr int kDefaultPhasemapPoints = 201;

/// Shared base set of the gamma-referenced figures (theta, phi left at 0).
inline ModelParams base_figure_params() {
    ModelParams p;
    p.kappa1 = 1.0;
    p.kappa2 = 1.0;
    p.gamma = 1.0;
    p.f = 10.0;
    p.G1 = 0.5;
    p.G2 = 0.5;
    p.J1 = 0.5;
    p.J2 = 0.01;
    p.J3 = Complex(0.0, 4.476);
    p.unit = {RateReference::gamma, 1.0};
    return p;
}

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v{"fig2"};
        for (char c = 'a'; c <= 'h'; ++c) v.push_back(std::string("fig3") + c);
        for (char c = 'a'; c <= 'h'; ++c) v.push_back(std::string("fig4") + c);
        for (char c = 'a'; c <= 'c'; ++c) v.push_back(std::string("fig5") + c);
        for (char c = 'a'; c <= 'c'; ++c) v.push_back(std::string("fig6") + c);
        for (char c = 'a'; c <= 'd'; ++c) v.push_back(std::string("fig7") + c);
        for (char c = 'a'; c <= 'd'; ++c) v.push_back(std::string("fig8") + c);
        return v;
    }();
    return ids;
}

inline FigurePreset figure_preset(std::string_view id) {
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw UnknownFigure("unknown figure '" + std::string(id) + "'");
    }
    constexpr double pi = std::numbers::pi;
    FigurePreset f;
    f.id = std::string(id);
    f.params = base_figure_params();
    if (id == "fig2") {
        f.kind = FigureKind::phasemap;
        f.points = kDefaultPhasemapPoints;
        return f;
    }
    const char group = id[3];
    const int sub = id[4] - 'a';
    switch (group) {
        case '3':
            f.params.theta = sub * pi / 4.0;
            f.params.phi = sub * pi / 4.0;
            return f;
        case '4': {
            static constexpr std::array<double, 4> j2{0.01, 0.1, 0.3, 0.5};
            static constexpr std::array<double, 4> j3{0.476, 1.476, 2.476, 4.476};
            f.params.theta = pi / 2.0;
            f.params.phi = pi / 2.0;
            if (sub < 4) {
                f.params.J2 = j2[sub];
            } else {
                f.params.J3 = Complex(0.0, j3[sub - 4]);
            }
            return f;
        }
        default: break;
    }
    // Designed-isolator figures, kappa2 units.
    static constexpr std::array<double, 3> f_values{0.1, 1.0, 5.0};
    static constexpr std::array<double, 4> gamma_values{0.001, 0.01, 0.1, 1.0};
    BranchDesign bd;
    bd.rates.kappa1 = 10.0;
    bd.rates.kappa2 = 1.0;
    if (group == '5' || group == '6') {
        bd.rates.gamma = 0.01;
        bd.rates.f = f_values[sub];
    } else {
        bd.rates.gamma = gamma_values[sub];
        bd.rates.f = 1.0;
    }
    const bool negative = group == '6' || group == '8';
    bd.outer = negative ? -1 : 1;
    bd.inner = negative ? -1 : 1;
    f.design = bd;
    f.params = design_candidate(bd.rates, bd.outer, bd.inner, false,
                                {RateReference::kappa2, 1.0})
                   .params;
    return f;
}

/// Caption-level description of a preset (the values a reader would
/// transcribe), used for the transcription golden file.
inline json preset_caption_values(const FigurePreset& f) {
    json j{{"id", f.id}, {"kind", f.kind == FigureKind::phasemap ? "phasemap" : "spectrum"}};
    if (f.design) {
        j["unit"] = "kappa2";
        j["kappa1"] = f.design->rates.kappa1;
        j["kappa2"] = f.design->rates.kappa2;
        j["gamma"] = f.design->rates.gamma;
        j["f"] = f.design->rates.f;
        j["branch"] = {f.design->outer, f.design->inner};
        j["theta"] = f.params.theta;
        j["phi"] = f.params.phi;
        return j;
    }
    j["unit"] = "gamma";
    j["kappa1"] = f.params.kappa1;
    j["kappa2"] = f.params.kappa2;
    j["gamma"] = f.params.gamma;
    j["f"] = f.params.f;
    j["G1"] = f.params.G1;
    j["G2"] = f.params.G2;
    j["J1"] = f.params.J1;
    j["J2"] = f.params.J2.real();
    j["J3_im"] = f.params.J3.imag();
    j["J3_re"] = f.params.J3.real();
    if (f.kind == FigureKind::spectrum) {
        j["theta"] = f.params.theta;
        j["phi"] = f.params.phi;
    }
    return j;
}

inline SweepSpec figure_sweep(const FigurePreset& f, std::optional<int> points = std::nullopt) {
    SweepSpec s;
    s.fixed = f.params;
    const int n = points.value_or(f.points);
    if (f.kind == FigureKind::phasemap) {
        s.axis1 = {"theta", 0.0, kTwoPi, n};
        s.axis2 = Axis{"phi", 0.0, kTwoPi, n};
        s.y = 0.0;
    } else {
        s.axis1 = {"y", f.y_min, f.y_max, n};
    }
    s.observables = {Observable::T12, Observable::T21};
    return s;
}

struct FigureResult {
    Dataset data;
    json summary;
};

namespace figure_detail {

inline json spectrum_summary(const FigurePreset& f, const Dataset& ds) {
    json s;
    const auto res = transmission_pair(f.params, 0.0);
    s["resonance"] = {{"y", 0.0}, {"T12", res.T12}, {"T21", res.T21}};
    double max_diff = 0.0;
    std::size_t singular = 0;
    std::optional<std::pair<double, double>> peak12, peak21, min12, min21;
    for (const auto& row : ds.rows) {
        if (row.status != "ok") {
            ++singular;
            continue;
        }
        const double y = row.axes[0], t12 = *row.values[0], t21 = *row.values[1];
        max_diff = std::max(max_diff, std::abs(t12 - t21));
        if (!peak12 || t12 > peak12->second) peak12 = {{y, t12}};
        if (!peak21 || t21 > peak21->second) peak21 = {{y, t21}};
        if (!min12 || t12 < min12->second) min12 = {{y, t12}};
        if (!min21 || t21 < min21->second) min21 = {{y, t21}};
    }
    auto landmark = [](const std::optional<std::pair<double, double>>& v) {
        return v ? json{{"y", v->first}, {"value", v->second}} : json(nullptr);
    };
    s["peak_T12"] = landmark(peak12);
    s["peak_T21"] = landmark(peak21);
    s["min_T12"] = landmark(min12);
    s["min_T21"] = landmark(min21);
    s["max_abs_T12_minus_T21"] = max_diff;
    s["singular_points"] = singular;
    return s;
}

inline json phasemap_summary(const FigurePreset& f, const Dataset& ds, int n) {
    json s;
    constexpr double pi = std::numbers::pi;
    auto at = [&](double th, double ph) {
        ModelParams p = f.params;
        p.theta = th;
        p.phi = ph;
        const auto tp = transmission_pair(p, 0.0);
        return json{{"theta", th}, {"phi", ph}, {"T12", tp.T12}, {"T21", tp.T21}};
    };
    s["landmarks"] = json::array({at(pi / 2.0, pi / 2.0), at(3.0 * pi / 2.0, 3.0 * pi / 2.0),
                                  at(0.0, 0.0), at(pi, pi)});
    // Duality residual: T12(theta_i, phi_j) vs T21(2pi - theta_i, 2pi - phi_j).
    double duality = 0.0;
    std::size_t singular = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const auto& a = ds.rows[static_cast<std::size_t>(j * n + i)];
            const auto& b = ds.rows[static_cast<std::size_t>((n - 1 - j) * n + (n - 1 - i))];
            if (a.status != "ok" || b.status != "ok") {
                ++singular;
                continue;
            }
            duality = std::max(duality, std::abs(*a.values[0] - *b.values[1]));
        }
    }
    s["max_duality_residual"] = duality;
    s["singular_points"] = singular;
    return s;
}

}  // namespace figure_detail

/// Computes the dataset and its landmark summary without touching disk.
inline FigureResult compute_figure(std::string_view id, std::optional<int> points = std::nullopt,
                                   unsigned threads = 0) {
    const auto f = figure_preset(id);
    const auto spec = figure_sweep(f, points);
    FigureResult r;
    r.data = sweep(spec, threads);
    json s{{"schema_version", kSchemaVersion},
           {"figure", f.id},
           {"kind", f.kind == FigureKind::phasemap ? "phasemap" : "spectrum"},
           {"params", to_json(f.params)},
           {"points", spec.axis1.points}};
    json body = f.kind == FigureKind::phasemap
                    ? figure_detail::phasemap_summary(f, r.data, spec.axis1.points)
                    : figure_detail::spectrum_summary(f, r.data);
    for (auto& [k, v] : body.items()) s[k] = v;
    if (f.design) {
        s["design"] = {{"branch", {f.design->outer, f.design->inner}},
                       {"J3", complex_to_json(f.params.J3)},
                       {"J2", complex_to_json(f.params.J2)}};
    }
    r.summary = std::move(s);
    return r;
}

/// Writes <id>.csv and <id>_summary.json into `out_dir` and returns the summary.
inline json reproduce_figure(std::string_view id, const std::filesystem::path& out_dir,
                             std::optional<int> points = std::nullopt, unsigned threads = 0) {
    auto r = compute_figure(id, points, threads);
    std::filesystem::create_directories(out_dir);
    const std::string stem(id);
    {
        std::ofstream csv(out_dir / (stem + ".csv"), std::ios::binary);
        if (!csv) throw ConfigError("cannot write " + (out_dir / (stem + ".csv")).string());
        write_csv(r.data, csv);
    }
    {
        std::ofstream js(out_dir / (stem + "_summary.json"), std::ios::binary);
        js << r.summary.dump(2) << "\n";
    }
    return r.summary;
}

}  // namespace nonrecip
