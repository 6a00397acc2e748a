#pragma once

// Linearized probe response: the 4x4 system A1 X = B for the +y sideband
// amplitudes X = (da1, da2, dd, db), B = (Ep1, Ep2, 0, 0).
//
// The LU solve is the authoritative result. The closed-form tau/chi
// numerators and the expanded determinant are kept as an independent check.

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "nonrecip/core_types.hpp"
#include "nonrecip/steady_state.hpp"

namespace nonrecip {

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

/// Row/column order (da1, da2, dd, db).
struct ResponseMatrix {
    Matrix4c entries;
    double y = 0.0;
};

/// e^{i a}, built from |a| so that unit_phasor(-a) == conj(unit_phasor(a)) bit for bit.
inline Complex unit_phasor(double a) {
    const double m = std::abs(a);
    const double s = std::sin(m);
    return {std::cos(m), a < 0.0 ? -s : s};
}

inline ResponseMatrix build_system_matrix(const ModelParams& p, double y) {
    constexpr Complex I{0.0, 1.0};
    const Complex e_theta = unit_phasor(p.theta);
    const Complex e_phi = unit_phasor(p.phi);
    ResponseMatrix m;
    m.y = y;
    auto& A = m.entries;
    A(0, 0) = p.kappa1 - I * y;
    A(0, 1) = I * p.J1;
    A(0, 2) = I * p.J2 * e_phi;
    A(0, 3) = I * p.G1;

    A(1, 0) = I * p.J1;
    A(1, 1) = p.kappa2 - I * y;
    A(1, 2) = 0.0;
    A(1, 3) = I * p.G2 * e_theta;

    A(2, 0) = I * p.J2 * std::conj(e_phi);
    A(2, 1) = 0.0;
    A(2, 2) = p.f - I * y;
    A(2, 3) = I * p.J3;

    A(3, 0) = I * p.G1;
    A(3, 1) = I * p.G2 * std::conj(e_theta);
    A(3, 2) = I * p.J3;
    A(3, 3) = p.gamma - I * y;
    return m;
}

/// Product of the Euclidean row norms; the scale for pole detection.
inline double row_norm_product(const Matrix4c& A) {
    double prod = 1.0;
    for (int i = 0; i < 4; ++i) prod *= A.row(i).norm();
    return prod;
}

inline constexpr double kSingularityThreshold = 1e-12;

inline bool is_singular(Complex det, const Matrix4c& A) {
    return !(std::abs(det) > kSingularityThreshold * row_norm_product(A));
}

/// LU factorization of A1 at detuning y; throws SingularMatrix at a pole.
class ResponseFactor {
public:
    ResponseFactor(const ModelParams& p, double y) : matrix_(build_system_matrix(p, y)) {
        lu_.compute(matrix_.entries);
        det_ = lu_.determinant();
        if (is_singular(det_, matrix_.entries)) {
            throw SingularMatrix("response matrix singular at y = " + std::to_string(y));
        }
    }

    /// LU solve followed by iterative refinement with residuals accumulated
    /// in extended precision.
    Vector4c solve(const Vector4c& rhs) const {
        Vector4c x = lu_.solve(rhs);
        for (int k = 0; k < kRefinementSteps; ++k) {
            const Vector4c r = extended_residual(rhs, x);
            if (r.isZero(0.0)) break;
            x += lu_.solve(r);
        }
        return x;
    }
    Matrix4c inverse() const { return lu_.inverse(); }
    Complex determinant() const { return det_; }
    const ResponseMatrix& matrix() const { return matrix_; }

private:
    static constexpr int kRefinementSteps = 2;

    Vector4c extended_residual(const Vector4c& b, const Vector4c& x) const {
        using CL = std::complex<long double>;
        Vector4c r;
        for (int i = 0; i < 4; ++i) {
            CL acc(b[i]);
            for (int j = 0; j < 4; ++j) acc -= CL(matrix_.entries(i, j)) * CL(x[j]);
            r[i] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        }
        return r;
    }

    ResponseMatrix matrix_;
    Eigen::PartialPivLU<Matrix4c> lu_;
    Complex det_;
};

inline ResponseSolution solve_response(const ModelParams& p, double y, double Ep1, double Ep2) {
    const ResponseFactor lu(p, y);
    Vector4c b;
    b << Ep1, Ep2, 0.0, 0.0;
    const Vector4c x = lu.solve(b);
    ResponseSolution s;
    s.da1 = x[0];
    s.da2 = x[1];
    s.dd = x[2];
    s.db = x[3];
    s.y = y;
    s.method = ResponseMethod::matrix_solve;
    return s;
}

/// ||A1 X - B|| / ||B|| for a full (matrix-solve) solution; 0 when B = 0 and X = 0.
inline double response_residual(const ModelParams& p, const ResponseSolution& s, double Ep1,
                                double Ep2) {
    if (!s.dd || !s.db) throw InvalidInput("response residual needs all four components");
    const auto A = build_system_matrix(p, s.y).entries;
    Vector4c x;
    x << s.da1, s.da2, *s.dd, *s.db;
    Vector4c b;
    b << Ep1, Ep2, 0.0, 0.0;
    const double r = (A * x - b).norm();
    const double bn = b.norm();
    return bn > 0.0 ? r / bn : r;
}

/// Which expansion of det(A1) to use. The printed expansion drops a factor
/// J1 on the -2 G1 G2 y cos(theta) term; `corrected` restores it and agrees
/// with the numeric determinant, `as_printed` keeps the literal transcription.
enum class DeterminantForm { corrected, as_printed };

struct ClosedFormCoefficients {
    std::array<Complex, 4> tau{};
    std::array<Complex, 4> chi{};
    Complex D{0.0, 0.0};
};

/// Expanded determinant of A1 in terms of the partial sums D1..D9.
inline Complex closed_form_determinant(const ModelParams& p, double y,
                                       DeterminantForm form = DeterminantForm::corrected) {
    constexpr Complex I{0.0, 1.0};
    const double k1 = p.kappa1, k2 = p.kappa2, g = p.gamma, f = p.f;
    const double G1 = p.G1, G2 = p.G2, J1 = p.J1;
    const Complex J2 = p.J2, J3 = p.J3;
    const Complex J2sq = J2 * J2, J3sq = J3 * J3;
    const double y2 = y * y, y3 = y2 * y, y4 = y2 * y2;

    const Complex D1 = J2sq - I * y * k1 - I * f * y + f * k1 - y2;
    const Complex D2 = -y2 - I * f * y - I * y * k2 + f * k2;
    const Complex D3 = -I * g * y - I * y * k2 + g * k2 - y2;
    const Complex D4 = -y2 + J3sq - I * g * y - I * f * y + g * f;
    const Complex D5 = -y2 - I * y * k1 - I * y * k2 + k1 * k2;
    const Complex D6 = I * (k1 + k2 + g + f);
    const double D7 = -g * f - g * k2 - f * k1 - k1 * k2 - f * k2 - g * k1;
    const Complex D8 = g * f - I * f * y - I * g * y;
    const double D9 = k1 + k2;

    const double cos_t = std::cos(p.theta);
    const double cos_p = std::cos(p.phi);
    const double cos_tp = std::cos(p.theta - p.phi);
    const double yterm_coupling = form == DeterminantForm::corrected ? J1 * G1 * G2 : G1 * G2;

    return -2.0 * J1 * J2 * J3 * G2 * cos_tp - 2.0 * I * J2 * J3 * k2 * G1 * cos_p -
           2.0 * I * J1 * G1 * G2 * f * cos_t - 2.0 * J2 * J3 * G1 * y * cos_p -
           2.0 * yterm_coupling * y * cos_t + G2 * G2 * D1 + G1 * G1 * D2 + J2sq * D3 +
           J1 * J1 * D4 + J3sq * D5 + y3 * D6 + y2 * D7 + k1 * k2 * D8 - I * g * f * y * D9 + y4;
}

inline ClosedFormCoefficients closed_form_coefficients(
    const ModelParams& p, double y, DeterminantForm form = DeterminantForm::corrected) {
    const double k1 = p.kappa1, k2 = p.kappa2, g = p.gamma, f = p.f;
    const double G1 = p.G1, G2 = p.G2, J1 = p.J1;
    const Complex J2 = p.J2, J3 = p.J3;
    const Complex J2sq = J2 * J2, J3sq = J3 * J3;
    const double y2 = y * y, y3 = y2 * y;
    const Complex e_t = std::polar(1.0, p.theta);
    const Complex e_p = std::polar(1.0, p.phi);
    const Complex e_tp = std::polar(1.0, p.theta - p.phi);

    ClosedFormCoefficients c;
    c.tau[0] = J1 * y2 - J1 * J3sq - J1 * g * f + G1 * G2 * y * std::conj(e_t) +
               G2 * J2 * J3 * std::conj(e_tp);
    c.tau[1] = J1 * g * y + J1 * f * y + G1 * G2 * f * std::conj(e_t);
    c.tau[2] = -G2 * G2 * y + y3 - J3sq * y - g * f * y - g * y * k2 - f * y * k2;
    c.tau[3] = G2 * G2 * f - g * y2 - f * y2 - y2 * k2 + J3sq * k2 + g * f * k2;

    c.chi[0] = J1 * y2 - J1 * J3sq - J1 * g * f + G1 * G2 * y * e_t + G2 * J2 * J3 * e_tp;
    c.chi[1] = J1 * g * y + J1 * f * y + G1 * G2 * f * e_t;
    c.chi[2] = -G1 * G1 * y + y3 - J2sq * y - G1 * J2 * J3 * e_p - J3sq * y - g * f * y -
               J2 * G1 * J3 * std::conj(e_p) - g * y * k1 - f * y * k1;
    c.chi[3] = -g * y2 - f * y2 - y2 * k1 + J3sq * k1 + g * f * k1 + J2sq * g + G1 * G1 * f;

    c.D = closed_form_determinant(p, y, form);
    return c;
}

/// Cavity amplitudes from the closed-form numerators. dd and db are left empty.
inline ResponseSolution response_closed_form(const ModelParams& p, double y, double Ep1,
                                             double Ep2,
                                             DeterminantForm form = DeterminantForm::corrected) {
    constexpr Complex I{0.0, 1.0};
    const auto c = closed_form_coefficients(p, y, form);
    if (is_singular(c.D, build_system_matrix(p, y).entries)) {
        throw SingularDeterminant("closed-form determinant vanishes at y = " + std::to_string(y));
    }
    ResponseSolution s;
    s.da1 = ((I * c.tau[2] + c.tau[3]) * Ep1 + (I * c.tau[0] - c.tau[1]) * Ep2) / c.D;
    s.da2 = ((I * c.chi[0] - c.chi[1]) * Ep1 + (I * c.chi[2] + c.chi[3]) * Ep2) / c.D;
    s.y = y;
    s.method = ResponseMethod::closed_form;
    return s;
}

struct AlignmentTolerance {
    double relative = 1e-6;
};

/// Linearized parameters from a converged steady state.
///
/// The rotating-frame response is only time independent when the effective
/// detunings, the ensemble detuning and the mechanical frequency coincide;
/// anything else is rejected with ResonanceMismatch.
inline ModelParams model_from_steady_state(const BareParams& p, const SteadyState& s,
                                           RateUnit unit = {},
                                           AlignmentTolerance tol = {}) {
    const double ref = p.omega_m;
    auto off = [&](double v) { return std::abs(v - ref) > tol.relative * std::abs(ref); };
    if (off(s.Delta1_eff) || off(s.Delta2_eff) || off(p.Delta_en)) {
        throw ResonanceMismatch(
            "linearization needs Delta1' = Delta2' = Delta_en = omega_m; got Delta1'=" +
            std::to_string(s.Delta1_eff) + ", Delta2'=" + std::to_string(s.Delta2_eff) +
            ", Delta_en=" + std::to_string(p.Delta_en) + ", omega_m=" + std::to_string(ref));
    }
    const auto eff = effective_couplings(p, s);
    ModelParams m;
    m.kappa1 = p.kappa1;
    m.kappa2 = p.kappa2;
    m.gamma = p.gamma;
    m.f = p.f;
    m.G1 = eff.G1;
    m.G2 = eff.G2;
    m.theta = eff.theta;
    m.J1 = p.J1;
    m.J2 = std::abs(p.J2);
    m.phi = canonical_phase(std::arg(p.J2));
    m.J3 = p.J3;
    m.unit = unit;
    return m;
}

}  // namespace nonrecip
