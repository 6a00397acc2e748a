#pragma once

// Analytical coupling conditions for perfect isolation at theta = phi = pi/2.
//
// With G1 = sqrt(gamma kappa1), G2 = sqrt(gamma kappa2) and
// J1 = G1 G2 / (gamma + f), the remaining couplings follow from
//   R7 J3^4 + R8 J3^2 + R9 = 0,
//   J2 = (J1 J3^2 + J1 gamma f - G1 G2 f) / (G2 J3).
// Every root is only a candidate: a design is accepted when the
// transmission at y = 0 is numerically {1, 0}.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nonrecip/core_types.hpp"
#include "nonrecip/transmission.hpp"

namespace nonrecip {

struct DesignRates {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double gamma = 0.0;
    double f = 0.0;
};

struct RCoefficients {
    double R1 = 0.0, R2 = 0.0, R3 = 0.0, R4 = 0.0, R5 = 0.0, R6 = 0.0, R7 = 0.0, R8 = 0.0,
           R9 = 0.0;
    double R2p = 0.0;  // J1^2 + kappa1 kappa2
    DesignRates rates;
    double G1 = 0.0, G2 = 0.0, J1 = 0.0;
};

inline RCoefficients r_coefficients(const DesignRates& rates, double G1, double G2, double J1) {
    const double k1 = rates.kappa1, k2 = rates.kappa2, g = rates.gamma, f = rates.f;
    if (G2 == 0.0) throw DivisionByZero("R6 divides by G2^2 and G2 = 0");
    if (k1 * k2 == 0.0) throw DivisionByZero("R1 divides by sqrt(kappa1 kappa2) = 0");
    RCoefficients r;
    r.rates = rates;
    r.G1 = G1;
    r.G2 = G2;
    r.J1 = J1;
    r.R1 = 1.0 / std::sqrt(k1 * k2);
    r.R2 = -2.0 * G1 * G2 * f / r.R1;
    r.R2p = J1 * J1 + k1 * k2;
    r.R3 = G2 * G2 * f * k1 + G1 * G1 * f * k2 + J1 * J1 * g * f + k1 * k2 * g * f;
    r.R4 = -2.0 * J1 * f * (J1 * g - G1 * G2);
    r.R5 = -2.0 * J1 * J1;
    r.R6 = (G2 * G2 + g * k2) / (G2 * G2);
    r.R7 = r.R5 + r.R2p + r.R6 * J1 * J1;
    r.R8 = r.R4 - r.R2 + 2.0 * r.R6 * J1 * J1 * g * f - 2.0 * r.R6 * J1 * G1 * G2 * f + r.R3;
    r.R9 = r.R6 * J1 * J1 * g * g * f * f - 2.0 * r.R6 * J1 * g * f * f * G1 * G2 +
           r.R6 * G1 * G1 * G2 * G2 * f * f;
    return r;
}

/// One root of the J3 quartic, labeled by the signs in
/// J3 = outer * sqrt((-R8 + inner * sqrt(R8^2 - 4 R7 R9)) / (2 R7)).
/// inner = 0 marks the linear fallback used when R7 vanishes.
struct J3Root {
    Complex value{0.0, 0.0};
    int outer = 1;
    int inner = 1;
};

/// Relative residual of the quartic at J3.
inline double quartic_residual(const RCoefficients& r, Complex J3) {
    const Complex u = J3 * J3;
    const Complex v = r.R7 * u * u + r.R8 * u + r.R9;
    const double scale = std::abs(r.R7) * std::norm(u) + std::abs(r.R8) * std::abs(u) + std::abs(r.R9);
    return scale > 0.0 ? std::abs(v) / scale : std::abs(v);
}

/// All roots in the order (+,+), (+,-), (-,+), (-,-). Square roots are
/// principal; imaginary and complex roots are kept.
inline std::vector<J3Root> j3_roots(const RCoefficients& r) {
    std::vector<J3Root> out;
    const double R7 = r.R7, R8 = r.R8, R9 = r.R9;
    if (R7 == 0.0 && R8 == 0.0) {
        throw DegenerateQuadratic("J3 quartic degenerate: R7 = R8 = 0");
    }
    if (std::abs(R7) < 1e-14 * std::abs(R8)) {
        const Complex s = std::sqrt(Complex(-R9 / R8, 0.0));
        out.push_back({s, 1, 0});
        out.push_back({-s, -1, 0});
        return out;
    }
    // Cancellation-free pair: q = -(R8 + s)/2 gives roots q/R7 and R9/q.
    const Complex s = std::sqrt(Complex(R8 * R8 - 4.0 * R7 * R9, 0.0));
    Complex plus, minus;
    if ((std::conj(Complex(R8, 0.0)) * s).real() >= 0.0) {
        const Complex q = -0.5 * (R8 + s);
        minus = q / R7;
        plus = q != 0.0 ? R9 / q : Complex(0.0, 0.0);
    } else {
        const Complex q = 0.5 * (-R8 + s);
        plus = q / R7;
        minus = q != 0.0 ? R9 / q : Complex(0.0, 0.0);
    }
    const Complex rp = std::sqrt(plus);
    const Complex rm = std::sqrt(minus);
    out.push_back({rp, 1, 1});
    out.push_back({rm, 1, -1});
    out.push_back({-rp, -1, 1});
    out.push_back({-rm, -1, -1});
    return out;
}

struct J2Quotient {
    Complex value{0.0, 0.0};
    double magnitude = 0.0;
    bool imaginary_residue = false;  // |Im| above 1e-9 relative
};

inline J2Quotient j2_from_design(double J1, Complex J3, double gamma, double f, double G1,
                                 double G2) {
    if (J3 == 0.0) throw ZeroJ3("J2 quotient divides by J3 = 0");
    J2Quotient q;
    q.value = (J1 * J3 * J3 + J1 * gamma * f - G1 * G2 * f) / (G2 * J3);
    q.magnitude = std::abs(q.value);
    q.imaginary_residue = std::abs(q.value.imag()) > 1e-9 * q.magnitude;
    return q;
}

inline constexpr double kPerfectionTolerance = 1e-6;

/// {>= 1 - tol, <= tol} in some order.
inline bool is_perfect(const TransmissionPoint& tp, double tol = kPerfectionTolerance) {
    const double lo = std::min(tp.T12, tp.T21);
    const double hi = std::max(tp.T12, tp.T21);
    return lo < tol && std::abs(hi - 1.0) < tol;
}

struct DesignCandidate {
    J3Root root;
    bool phase_rotated = false;  // root multiplied by e^{i pi/2}
    Complex J3{0.0, 0.0};
    J2Quotient J2;
    ModelParams params;
    double T12_at_resonance = std::nan("");
    double T21_at_resonance = std::nan("");
    bool valid = false;
    Direction direction = Direction::reciprocal;
    std::string note;
};

struct IsolatorDesign {
    DesignRates rates;
    double G1 = 0.0, G2 = 0.0, J1 = 0.0;
    RCoefficients r;
    std::vector<DesignCandidate> candidates;
    std::optional<std::size_t> chosen;
};

class NoValidDesign : public NumericalError {
public:
    explicit NoValidDesign(IsolatorDesign report)
        : NumericalError("no J3 root candidate yields perfect isolation at y = 0"),
          report_(std::move(report)) {}
    const IsolatorDesign& report() const noexcept { return report_; }

private:
    IsolatorDesign report_;
};

namespace design_detail {

inline void require_positive(const DesignRates& r) {
    for (double v : {r.kappa1, r.kappa2, r.gamma, r.f}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidInput("isolator design needs kappa1, kappa2, gamma, f > 0");
        }
    }
}

struct Couplings {
    double G1, G2, J1;
};

inline Couplings forced_couplings(const DesignRates& r) {
    const double G1 = std::sqrt(r.gamma * r.kappa1);
    const double G2 = std::sqrt(r.gamma * r.kappa2);
    return {G1, G2, G1 * G2 / (r.gamma + r.f)};
}

inline DesignCandidate evaluate(const DesignRates& rates, const Couplings& c, const J3Root& root,
                                bool rotate, RateUnit unit) {
    DesignCandidate cand;
    cand.root = root;
    cand.phase_rotated = rotate;
    cand.J3 = rotate ? Complex(0.0, 1.0) * root.value : root.value;

    ModelParams& p = cand.params;
    p.kappa1 = rates.kappa1;
    p.kappa2 = rates.kappa2;
    p.gamma = rates.gamma;
    p.f = rates.f;
    p.G1 = c.G1;
    p.G2 = c.G2;
    p.J1 = c.J1;
    p.theta = std::numbers::pi / 2.0;
    p.phi = std::numbers::pi / 2.0;
    p.J3 = cand.J3;
    p.unit = unit;

    try {
        cand.J2 = j2_from_design(c.J1, cand.J3, rates.gamma, rates.f, c.G1, c.G2);
    } catch (const ZeroJ3& e) {
        cand.note = e.what();
        return cand;
    }
    p.J2 = cand.J2.value;
    try {
        const auto tp = transmission_pair(p, 0.0);
        cand.T12_at_resonance = tp.T12;
        cand.T21_at_resonance = tp.T21;
        cand.valid = is_perfect(tp);
        cand.direction = isolation_metrics(tp).direction;
    } catch (const SingularMatrix& e) {
        cand.note = e.what();
    }
    return cand;
}

}  // namespace design_detail

/// Single candidate for a given root branch, as used by the figure presets.
inline DesignCandidate design_candidate(const DesignRates& rates, int outer, int inner,
                                        bool rotate = false, RateUnit unit = {}) {
    design_detail::require_positive(rates);
    const auto c = design_detail::forced_couplings(rates);
    const auto r = r_coefficients(rates, c.G1, c.G2, c.J1);
    for (const auto& root : j3_roots(r)) {
        if (root.outer == outer && root.inner == inner) {
            return design_detail::evaluate(rates, c, root, rotate, unit);
        }
    }
    throw InvalidInput("no J3 root with branch (" + std::to_string(outer) + ", " +
                       std::to_string(inner) + ")");
}

/// Enumerates every root (bare and multiplied by e^{i pi/2}), validates each
/// by the transmission at y = 0 and picks the valid candidate with the
/// smallest |J3|, then the smallest |J2|. Throws NoValidDesign with the full
/// report when nothing validates.
inline IsolatorDesign design_isolator(const DesignRates& rates, RateUnit unit = {}) {
    design_detail::require_positive(rates);
    const auto c = design_detail::forced_couplings(rates);
    IsolatorDesign d;
    d.rates = rates;
    d.G1 = c.G1;
    d.G2 = c.G2;
    d.J1 = c.J1;
    d.r = r_coefficients(rates, c.G1, c.G2, c.J1);
    for (bool rotate : {false, true}) {
        for (const auto& root : j3_roots(d.r)) {
            d.candidates.push_back(design_detail::evaluate(rates, c, root, rotate, unit));
        }
    }
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); };
    for (std::size_t i = 0; i < d.candidates.size(); ++i) {
        const auto& cand = d.candidates[i];
        if (!cand.valid) continue;
        if (!d.chosen) {
            d.chosen = i;
            continue;
        }
        const auto& best = d.candidates[*d.chosen];
        const double a = std::abs(cand.J3), b = std::abs(best.J3);
        if (close(a, b) ? cand.J2.magnitude < best.J2.magnitude && !close(cand.J2.magnitude, best.J2.magnitude)
                        : a < b) {
            d.chosen = i;
        }
    }
    if (!d.chosen) throw NoValidDesign(std::move(d));
    return d;
}

}  // namespace nonrecip
