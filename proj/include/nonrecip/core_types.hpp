#pragma once

// Parameter and result types shared by every module of the library.
//
// All rates are dimensionless multiples of a declared reference rate (the
// mechanical damping gamma or the cavity-2 decay kappa2). Absolute units are
// only a conversion layer: RateUnit::value carries the reference rate in rad/s.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/errors.hpp"

namespace nonrecip {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class RateReference { gamma, kappa2, absolute };

inline std::string_view to_string(RateReference r) {
    switch (r) {
        case RateReference::gamma: return "gamma";
        case RateReference::kappa2: return "kappa2";
        case RateReference::absolute: return "absolute";
    }
    return "?";
}

inline RateReference parse_rate_reference(std::string_view s) {
    if (s == "gamma") return RateReference::gamma;
    if (s == "kappa2") return RateReference::kappa2;
    if (s == "absolute") return RateReference::absolute;
    throw ConfigError("unknown rate unit '" + std::string(s) + "' (expected gamma|kappa2|absolute)");
}

struct RateUnit {
    RateReference reference = RateReference::gamma;
    double value = 1.0;  // reference rate in rad/s; 1 when unknown or absolute

    bool operator==(const RateUnit&) const = default;
};

/// Wraps an angle into [0, 2*pi). Idempotent.
inline double canonical_phase(double angle) {
    if (!std::isfinite(angle)) return angle;
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // -tiny + 2pi rounds up to 2pi
    return r;
}

/// Parameters of the linearized probe-response model.
///
/// G1 is real by convention; the relative optomechanical phase lives in
/// theta. J2 is the ensemble/cavity-1 coupling amplitude entering the
/// response matrix as i*J2*e^{+i phi} and i*J2*e^{-i phi}. A real,
/// nonnegative J2 is the Hermitian coupling |J2|; the isolator design
/// algebra can produce a purely imaginary (dissipative) amplitude, which is
/// why the field is complex. J3 is complex for the same reason.
struct ModelParams {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double gamma = 0.0;
    double f = 0.0;
    double G1 = 0.0;
    double G2 = 0.0;
    double theta = 0.0;
    double J1 = 0.0;
    Complex J2{0.0, 0.0};
    double phi = 0.0;
    Complex J3{0.0, 0.0};
    RateUnit unit{};

    bool operator==(const ModelParams&) const = default;
};

/// Returns a copy with theta and phi wrapped into [0, 2*pi).
inline ModelParams canonicalize(ModelParams p) {
    p.theta = canonical_phase(p.theta);
    p.phi = canonical_phase(p.phi);
    return p;
}

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) {
            if (!s.empty()) s += "; ";
            s += v;
        }
        return s;
    }
};

namespace detail {

inline void check_rate(ValidationReport& r, const char* name, double v) {
    if (!std::isfinite(v)) {
        r.violations.push_back(std::string(name) + " finite");
    } else if (v < 0.0) {
        r.violations.push_back(std::string(name) + " nonnegative");
    }
}

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

/// Lists every violated invariant; an empty report means the set is usable.
/// Phases are not range-checked because they are wrapped on storage.
inline ValidationReport validate_params(const ModelParams& p) {
    ValidationReport r;
    detail::check_rate(r, "kappa1", p.kappa1);
    detail::check_rate(r, "kappa2", p.kappa2);
    detail::check_rate(r, "gamma", p.gamma);
    detail::check_rate(r, "f", p.f);
    detail::check_rate(r, "G1", p.G1);
    detail::check_rate(r, "G2", p.G2);
    detail::check_rate(r, "J1", p.J1);
    if (!detail::finite(p.J2)) {
        r.violations.push_back("J2 finite");
    } else if (p.J2.real() < 0.0) {
        r.violations.push_back("J2 real part nonnegative");
    }
    if (!detail::finite(p.J3)) r.violations.push_back("J3 finite");
    if (!std::isfinite(p.theta)) r.violations.push_back("theta finite");
    if (!std::isfinite(p.phi)) r.violations.push_back("phi finite");
    if (!(p.unit.value > 0.0) || !std::isfinite(p.unit.value)) {
        r.violations.push_back("unit value positive");
    }
    return r;
}

/// The rate `target` expressed in the units of `p`.
inline double reference_rate(const ModelParams& p, RateReference target) {
    switch (target) {
        case RateReference::gamma: return p.gamma;
        case RateReference::kappa2: return p.kappa2;
        case RateReference::absolute: return 1.0 / p.unit.value;
    }
    return 1.0;
}

/// Re-expresses every rate of `p` as a multiple of `target`.
inline ModelParams convert_units(const ModelParams& p, RateReference target) {
    if (p.unit.reference == target) return p;
    const double r = reference_rate(p, target);
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw InvalidInput("cannot normalize to " + std::string(to_string(target)) +
                           ": reference rate is zero or not finite");
    }
    ModelParams q = p;
    for (double* v : {&q.kappa1, &q.kappa2, &q.gamma, &q.f, &q.G1, &q.G2, &q.J1}) *v /= r;
    q.J2 /= r;
    q.J3 /= r;
    q.unit.reference = target;
    q.unit.value = target == RateReference::absolute ? 1.0 : p.unit.value * r;
    return q;
}

/// Pre-linearization parameters of the driven system.
struct BareParams {
    double Delta1 = 0.0;
    double Delta2 = 0.0;
    double Delta_en = 0.0;
    double omega_m = 1.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double J1 = 0.0;
    Complex J2{0.0, 0.0};
    Complex J3{0.0, 0.0};
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double gamma = 0.0;
    double f = 0.0;
};

inline ValidationReport validate_bare(const BareParams& p) {
    ValidationReport r;
    if (!(p.omega_m > 0.0) || !std::isfinite(p.omega_m)) r.violations.push_back("omega_m positive");
    detail::check_rate(r, "kappa1", p.kappa1);
    detail::check_rate(r, "kappa2", p.kappa2);
    detail::check_rate(r, "gamma", p.gamma);
    detail::check_rate(r, "f", p.f);
    for (double v : {p.Delta1, p.Delta2, p.Delta_en, p.g1, p.g2, p.J1}) {
        if (!std::isfinite(v)) {
            r.violations.push_back("bare parameters finite");
            break;
        }
    }
    if (!detail::finite(p.J2) || !detail::finite(p.J3)) r.violations.push_back("couplings finite");
    return r;
}

struct Drives {
    Complex E1{0.0, 0.0};
    Complex E2{0.0, 0.0};
    double Ep1 = 0.0;
    double Ep2 = 0.0;
    double delta = 0.0;  // probe-drive detuning
};

inline ValidationReport validate_drives(const Drives& d) {
    ValidationReport r;
    if (!(d.Ep1 >= 0.0)) r.violations.push_back("Ep1 nonnegative");
    if (!(d.Ep2 >= 0.0)) r.violations.push_back("Ep2 nonnegative");
    if (!detail::finite(d.E1) || !detail::finite(d.E2)) r.violations.push_back("drives finite");
    return r;
}

/// Mean amplitudes of the driven steady state.
struct SteadyState {
    Complex alpha1{0.0, 0.0};
    Complex alpha2{0.0, 0.0};
    Complex rho{0.0, 0.0};
    Complex beta{0.0, 0.0};
    double Delta1_eff = 0.0;
    double Delta2_eff = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
};

enum class ResponseMethod { matrix_solve, closed_form };

/// Probe-sideband fluctuation amplitudes at detuning y. The closed-form
/// route only yields the two cavity components, so dd/db are optional.
struct ResponseSolution {
    Complex da1{0.0, 0.0};
    Complex da2{0.0, 0.0};
    std::optional<Complex> dd;
    std::optional<Complex> db;
    double y = 0.0;
    ResponseMethod method = ResponseMethod::matrix_solve;
};

struct TransmissionPoint {
    double y = 0.0;
    double T12 = 0.0;
    double T21 = 0.0;
};

}  // namespace nonrecip
