// Acceptance criteria 1-11. One PASS/FAIL line per criterion; exit status
// is nonzero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonrecip/nonrecip.hpp"
#include "nonrecip/random_params.hpp"
#include "nonrecip/verify.hpp"

using namespace nonrecip;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome from_check(const CheckResult& r) {
    return {r.passed, fmt("worst %.3e, bound %.0e", r.worst, r.tolerance)};
}

TransmissionPoint base_at_phase(double ph) {
    auto p = base_figure_params();
    p.theta = p.phi = ph;
    return transmission_pair(p, 0.0);
}

Outcome forward_isolation() {
    const auto tp = base_at_phase(kPi / 2.0);
    return {tp.T12 < 0.05 && tp.T21 > 0.95, fmt("T12 = %.5f (< 0.05), T21 = %.5f (> 0.95)", tp.T12, tp.T21)};
}

Outcome mirror_isolation() {
    const auto tp = base_at_phase(3.0 * kPi / 2.0);
    return {tp.T12 > 0.95 && tp.T21 < 0.05, fmt("T12 = %.5f (> 0.95), T21 = %.5f (< 0.05)", tp.T12, tp.T21)};
}

Outcome designed_perfection() {
    Outcome o{true, ""};
    for (double f : {0.1, 1.0, 5.0}) {
        try {
            const auto d = design_isolator({10.0, 1.0, 0.01, f});
            const auto& c = d.candidates[*d.chosen];
            const double lo = std::min(c.T12_at_resonance, c.T21_at_resonance);
            const double hi = std::max(c.T12_at_resonance, c.T21_at_resonance);
            o.pass = o.pass && lo < 1e-6 && std::abs(hi - 1.0) < 1e-6;
            o.detail += fmt("f=%g: min %.1e, |max-1| %.1e; ", f, lo, std::abs(hi - 1.0));
        } catch (const NoValidDesign&) {
            o.pass = false;
            o.detail += fmt("f=%g: no valid design; ", f);
        }
    }
    return o;
}

Outcome steady_self_consistency() {
    std::mt19937_64 rng(90);
    double worst = 0.0;
    int failures = 0;
    for (int n = 0; n < 100; ++n) {
        const auto p = random_bare_params(rng);
        const auto d = random_drives(rng, p);
        try {
            const auto s = solve_steady_state(p, d);
            worst = std::max(worst, steady_residual_norm(p, d, s));
        } catch (const NumericalError&) {
            ++failures;
        }
    }
    bool zero_exact = true;
    for (int n = 0; n < 10; ++n) {
        const auto s = solve_steady_state(random_bare_params(rng), Drives{});
        zero_exact = zero_exact && s.alpha1 == 0.0 && s.alpha2 == 0.0 && s.rho == 0.0 && s.beta == 0.0;
    }
    return {failures == 0 && worst < 1e-10 && zero_exact,
            fmt("worst residual %.3e over 100 draws, %d failures, zero drive exact: %s", worst, failures,
                zero_exact ? "yes" : "no")};
}

// Full width of the contiguous T < 0.5 region containing y = 0.
double suppression_width(const ModelParams& p, bool use_t21, double y_min, double y_max, int n) {
    auto below = [&](double y) {
        const auto tp = transmission_pair(p, y);
        return (use_t21 ? tp.T21 : tp.T12) < 0.5;
    };
    if (!below(0.0)) return 0.0;
    const double h = (y_max - y_min) / (n - 1);
    double lo = 0.0, hi = 0.0;
    while (lo - h >= y_min - 1e-12 && below(lo - h)) lo -= h;
    while (hi + h <= y_max + 1e-12 && below(hi + h)) hi += h;
    return hi - lo;
}

double passband_width(const ModelParams& p) {
    auto above = [&](double y) { return transmission_pair(p, y).T12 > 0.5; };
    if (!above(0.0)) return 0.0;
    const double h = 0.01;
    double lo = 0.0, hi = 0.0;
    while (lo - h >= -5.0 - 1e-12 && above(lo - h)) lo -= h;
    while (hi + h <= 5.0 + 1e-12 && above(hi + h)) hi += h;
    return hi - lo;
}

Outcome bandwidth_trend() {
    Outcome o{true, ""};
    auto series = [&](const char* label, std::vector<std::string> ids) {
        std::vector<double> widths;
        std::string passbands;
        for (const auto& id : ids) {
            const auto f = figure_preset(id);
            widths.push_back(suppression_width(f.params, true, f.y_min, f.y_max, 1001));
            passbands += fmt("%.2f ", passband_width(f.params));
        }
        const bool mono = std::is_sorted(widths.begin(), widths.end(),
                                         [](double a, double b) { return a < b - 1e-9; });
        o.pass = o.pass && mono;
        o.detail += std::string(label) + " T21<0.5 widths";
        for (double w : widths) o.detail += fmt(" %.2f", w);
        o.detail += " (T12>0.5 passbands " + passbands + "); ";
    };
    series("f:", {"fig5a", "fig5b", "fig5c"});
    series("f(-,-):", {"fig6a", "fig6b", "fig6c"});
    series("gamma:", {"fig7a", "fig7b", "fig7c", "fig7d"});
    series("gamma(-,-):", {"fig8a", "fig8b", "fig8c", "fig8d"});
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const auto root = std::filesystem::temp_directory_path() / "nonrecip_acceptance";
    std::filesystem::remove_all(root);
    for (const char* sub : {"run1", "run2"}) {
        const std::string cmd = std::string(NONRECIP_CLI) + " figure fig3c --out " +
                                (root / sub).string() + " > /dev/null";
        const int status = std::system(cmd.c_str());
        if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            return {false, std::string("CLI run failed: ") + cmd};
        }
    }
    const auto a = slurp(root / "run1" / "fig3c.csv");
    const auto b = slurp(root / "run2" / "fig3c.csv");
    std::filesystem::remove_all(root);
    return {!a.empty() && a == b, fmt("%zu bytes, identical: %s", a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "forward isolation at theta=phi=pi/2", forward_isolation},
        {2, "mirror isolation at theta=phi=3pi/2", mirror_isolation},
        {3, "reciprocity at theta=phi in {0, pi}", [] { return from_check(check_reciprocity(1001)); }},
        {4, "designed perfection for f in {0.1, 1, 5}", designed_perfection},
        {5, "closed form matches matrix solve", [] { return from_check(check_closed_form_equivalence(1000)); }},
        {6, "expanded determinant identity", [] { return from_check(check_determinant_identity(1000)); }},
        {7, "phase duality", [] { return from_check(check_phase_duality(1000)); }},
        {8, "J3 root consistency", [] { return from_check(check_root_consistency(200)); }},
        {9, "steady-state self-consistency", steady_self_consistency},
        {10, "bandwidth trend", bandwidth_trend},
        {11, "determinism of figure fig3c", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %2d  %-42s %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), ms);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
