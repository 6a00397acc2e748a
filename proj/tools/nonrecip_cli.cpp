// Command-line front end: spectra, phase maps, steady states, isolator
// designs, figure datasets and the invariant suite.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nonrecip/nonrecip.hpp"
#include "nonrecip/verify.hpp"

namespace {

using namespace nonrecip;

enum ExitCode { kOk = 0, kInvalid = 1, kNumerical = 2 };

struct OutputOptions {
    std::string out_dir;
    std::string format = "csv";
};

void emit_text(const std::string& text, const OutputOptions& o, const std::string& filename) {
    if (o.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void emit_dataset(const Dataset& ds, const OutputOptions& o, const std::string& stem) {
    if (o.format == "json") {
        emit_text(to_json(ds).dump(2) + "\n", o, stem + ".json");
    } else {
        emit_text(to_csv(ds), o, stem + ".csv");
    }
}

ModelParams load_model(const std::string& path, const std::optional<std::string>& unit) {
    auto p = model_params_from_json(load_json_file(path));
    if (auto r = validate_params(p); !r.ok()) throw InvalidInput("parameters: " + r.summary());
    if (unit) p = convert_units(p, parse_rate_reference(*unit));
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonreciprocal transmission in a two-cavity optomechanical system with an atomic ensemble"};
    app.require_subcommand(1);

    OutputOptions out;
    std::string params_path;
    std::optional<std::string> unit;
    std::optional<int> points;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", out.out_dir, "Output directory (default: stdout)");
        sub->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* spectrum = app.add_subcommand("spectrum", "T12/T21 versus probe detuning y");
    double y_min = -5.0, y_max = 5.0;
    std::optional<double> theta, phi;
    spectrum->add_option("--params", params_path, "ModelParams JSON file")->required();
    spectrum->add_option("--points", points, "Grid points (default 1001)");
    spectrum->add_option("--ymin", y_min, "Lower detuning bound");
    spectrum->add_option("--ymax", y_max, "Upper detuning bound");
    spectrum->add_option("--theta", theta, "Override theta (rad)");
    spectrum->add_option("--phi", phi, "Override phi (rad)");
    spectrum->add_option("--unit", unit, "Rate reference for the output")
        ->check(CLI::IsMember({"gamma", "kappa2"}));
    add_output(spectrum);

    auto* phasemap = app.add_subcommand("phasemap", "T12/T21 over theta x phi at fixed y");
    double map_y = 0.0;
    phasemap->add_option("--params", params_path, "ModelParams JSON file")->required();
    phasemap->add_option("--points", points, "Grid points per axis (default 201)");
    phasemap->add_option("--y", map_y, "Probe detuning");
    phasemap->add_option("--unit", unit, "Rate reference")->check(CLI::IsMember({"gamma", "kappa2"}));
    add_output(phasemap);

    auto* steady = app.add_subcommand("steady", "Mean-field steady state");
    steady->add_option("--params", params_path,
                       "JSON with \"bare\", \"drives\" and optional \"solver\" objects")
        ->required();
    steady->add_option("--out", out.out_dir, "Output directory (default: stdout)");

    auto* design = app.add_subcommand("design", "Couplings for perfect isolation");
    DesignRates rates;
    std::string design_unit = "kappa2";
    design->add_option("--kappa1", rates.kappa1)->required();
    design->add_option("--kappa2", rates.kappa2)->required();
    design->add_option("--gamma", rates.gamma)->required();
    design->add_option("--f", rates.f)->required();
    design->add_option("--unit", design_unit, "Rate reference of the inputs")
        ->check(CLI::IsMember({"gamma", "kappa2"}));
    design->add_option("--out", out.out_dir, "Output directory (default: stdout)");

    auto* figure = app.add_subcommand("figure", "Regression dataset for a named preset");
    std::string figure_id;
    std::string figure_out = ".";
    figure->add_option("id", figure_id, "Figure id, e.g. fig3c")->required();
    figure->add_option("--out", figure_out, "Output directory");
    figure->add_option("--points", points, "Override grid points per axis");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*spectrum) {
            auto p = load_model(params_path, unit);
            if (theta) p.theta = canonical_phase(*theta);
            if (phi) p.phi = canonical_phase(*phi);
            SweepSpec s;
            s.fixed = p;
            s.axis1 = {"y", y_min, y_max, points.value_or(kDefaultSpectrumPoints)};
            emit_dataset(sweep(s), out, "spectrum");
        } else if (*phasemap) {
            const auto p = load_model(params_path, unit);
            const int n = points.value_or(kDefaultPhasemapPoints);
            SweepSpec s;
            s.fixed = p;
            s.y = map_y;
            s.axis1 = {"theta", 0.0, kTwoPi, n};
            s.axis2 = Axis{"phi", 0.0, kTwoPi, n};
            emit_dataset(sweep(s), out, "phasemap");
        } else if (*steady) {
            const auto j = load_json_file(params_path);
            if (!j.is_object() || !j.contains("bare") || !j.contains("drives")) {
                throw ConfigError("steady-state file needs \"bare\" and \"drives\" objects");
            }
            const auto bare = bare_params_from_json(j["bare"]);
            const auto drives = drives_from_json(j["drives"]);
            if (auto r = validate_drives(drives); !r.ok()) throw InvalidInput("drives: " + r.summary());
            const SolverConfig cfg = j.contains("solver") ? solver_config_from_json(j["solver"]) : SolverConfig{};
            const auto s = solve_steady_state(bare, drives, cfg);
            json report{{"schema_version", kSchemaVersion}, {"steady_state", to_json(s)}};
            try {
                const auto e = effective_couplings(bare, s);
                report["effective_couplings"] = {{"G1", e.G1}, {"G2", e.G2}, {"theta", e.theta}};
            } catch (const ZeroAmplitude& e) {
                report["effective_couplings"] = nullptr;
                report["note"] = e.what();
            }
            emit_text(report.dump(2) + "\n", out, "steady.json");
        } else if (*design) {
            const RateUnit u{parse_rate_reference(design_unit), 1.0};
            try {
                const auto d = design_isolator(rates, u);
                emit_text(to_json(d).dump(2) + "\n", out, "design.json");
            } catch (const NoValidDesign& e) {
                emit_text(to_json(e.report()).dump(2) + "\n", out, "design.json");
                throw;
            }
        } else if (*figure) {
            const auto summary = reproduce_figure(figure_id, figure_out, points);
            std::cout << summary.dump(2) << "\n";
        } else if (*verify) {
            bool all = true;
            for (const auto& r : run_invariant_suite()) {
                std::printf("%s  %-50s worst=%.3e tol=%.1e\n", r.passed ? "PASS" : "FAIL",
                            r.name.c_str(), r.worst, r.tolerance);
                all = all && r.passed;
            }
            return all ? kOk : kNumerical;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
