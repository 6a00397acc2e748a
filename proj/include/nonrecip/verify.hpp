#pragma once

// Library-level invariant checks behind the `verify` command. Each check is
// a self-contained numerical experiment with a fixed seed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonrecip/figures.hpp"
#include "nonrecip/isolator_design.hpp"
#include "nonrecip/random_params.hpp"
#include "nonrecip/response.hpp"
#include "nonrecip/steady_state.hpp"
#include "nonrecip/transmission.hpp"

namespace nonrecip {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double tolerance = 0.0;
};

namespace verify_detail {

inline double rel(Complex a, Complex b) {
    const double s = std::abs(b);
    return s > 0.0 ? std::abs(a - b) / s : std::abs(a - b);
}

inline double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace verify_detail

inline CheckResult check_closed_form_equivalence(int draws = 1000, unsigned seed = 11) {
    std::mt19937_64 rng(seed);
    CheckResult r{"closed-form amplitudes match matrix solve", true, 0.0, 1e-10};
    for (int n = 0; n < draws; ++n) {
        const auto p = random_model_params(rng);
        const double y = random_detuning(rng);
        const auto a = solve_response(p, y, 1.0, 0.7);
        const auto b = response_closed_form(p, y, 1.0, 0.7);
        r.worst = std::max({r.worst, verify_detail::rel(b.da1, a.da1), verify_detail::rel(b.da2, a.da2)});
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline CheckResult check_determinant_identity(int draws = 1000, unsigned seed = 12) {
    std::mt19937_64 rng(seed);
    CheckResult r{"expanded determinant matches LU determinant", true, 0.0, 1e-10};
    for (int n = 0; n < draws; ++n) {
        const auto p = random_model_params(rng);
        const double y = random_detuning(rng);
        const Complex numeric = build_system_matrix(p, y).entries.partialPivLu().determinant();
        r.worst = std::max(r.worst, verify_detail::rel(closed_form_determinant(p, y), numeric));
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline CheckResult check_phase_duality(int draws = 1000, unsigned seed = 13) {
    std::mt19937_64 rng(seed);
    CheckResult r{"T12(theta, phi) == T21(-theta, -phi)", true, 0.0, 1e-12};
    for (int n = 0; n < draws; ++n) {
        auto p = random_model_params(rng);
        for (int k = 0; k < 5; ++k) {
            const double y = random_detuning(rng);
            auto q = p;
            q.theta = -p.theta;
            q.phi = -p.phi;
            const auto a = transmission_pair(p, y);
            const auto b = transmission_pair(q, y);
            r.worst = std::max({r.worst, verify_detail::rel(a.T12, b.T21), verify_detail::rel(a.T21, b.T12)});
        }
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline CheckResult check_reciprocity(int points = 1001) {
    CheckResult r{"T12 == T21 at theta = phi in {0, pi}", true, 0.0, 1e-10};
    for (const char* id : {"fig3a", "fig3e"}) {
        const auto f = figure_preset(id);
        for (int i = 0; i < points; ++i) {
            const double y = -5.0 + 10.0 * i / (points - 1);
            const auto tp = transmission_pair(f.params, y);
            r.worst = std::max(r.worst, std::abs(tp.T12 - tp.T21));
        }
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline CheckResult check_root_consistency(int draws = 200, unsigned seed = 14) {
    std::mt19937_64 rng(seed);
    CheckResult r{"J3 roots satisfy the design quartic", true, 0.0, 1e-10};
    for (int n = 0; n < draws; ++n) {
        DesignRates rates{log_uniform(rng, {}), log_uniform(rng, {}), log_uniform(rng, {}),
                          log_uniform(rng, {})};
        const double G1 = std::sqrt(rates.gamma * rates.kappa1);
        const double G2 = std::sqrt(rates.gamma * rates.kappa2);
        const auto R = r_coefficients(rates, G1, G2, G1 * G2 / (rates.gamma + rates.f));
        for (const auto& root : j3_roots(R)) r.worst = std::max(r.worst, quartic_residual(R, root.value));
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline CheckResult check_designs() {
    CheckResult r{"designed isolators reach {1, 0} at resonance", true, 0.0, kPerfectionTolerance};
    for (double f : {0.1, 1.0, 5.0}) {
        try {
            const auto d = design_isolator({10.0, 1.0, 0.01, f});
            const auto& c = d.candidates[*d.chosen];
            r.worst = std::max({r.worst, std::min(c.T12_at_resonance, c.T21_at_resonance),
                                std::abs(std::max(c.T12_at_resonance, c.T21_at_resonance) - 1.0)});
        } catch (const NoValidDesign&) {
            r.worst = 1.0;
        }
    }
    r.passed = r.worst < r.tolerance;
    return r;
}

inline std::vector<CheckResult> run_invariant_suite() {
    return {check_closed_form_equivalence(), check_determinant_identity(), check_phase_duality(),
            check_reciprocity(), check_root_consistency(), check_designs()};
}

}  // namespace nonrecip
