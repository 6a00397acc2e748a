#pragma once

// Mean-field steady state of the driven system.
//
// Unknowns are packed as the real vector
//   (Re a1, Im a1, Re a2, Im a2, Re rho, Im rho, Re beta, Im beta).
// The equations are not holomorphic (|a_j|^2, Re(beta), Re(rho) appear), so
// Newton works on this real 8-vector with an analytic Jacobian.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "nonrecip/core_types.hpp"

namespace nonrecip {

struct SolverConfig {
    double tol = 1e-12;  // residual norm, relative to max(1, |(E1, E2)|)
    int max_iter = 200;
    double damping = 1.0;  // initial Newton step fraction, in (0, 1]
};

inline ValidationReport validate_config(const SolverConfig& cfg) {
    ValidationReport r;
    if (!(cfg.tol > 0.0)) r.violations.push_back("tol positive");
    if (cfg.max_iter < 1) r.violations.push_back("max_iter positive");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) r.violations.push_back("damping in (0, 1]");
    return r;
}

using SteadyVector = std::array<double, 8>;

namespace steady_detail {

inline constexpr Complex I{0.0, 1.0};

struct Amplitudes {
    Complex a1, a2, rho, beta;
};

inline Amplitudes unpack(const Eigen::Matrix<double, 8, 1>& x) {
    return {{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}};
}

inline Eigen::Matrix<double, 8, 1> pack(const SteadyState& s) {
    Eigen::Matrix<double, 8, 1> x;
    x << s.alpha1.real(), s.alpha1.imag(), s.alpha2.real(), s.alpha2.imag(), s.rho.real(),
        s.rho.imag(), s.beta.real(), s.beta.imag();
    return x;
}

inline std::array<Complex, 4> lhs(const BareParams& p, const Complex& E1, const Complex& E2,
                                  const Amplitudes& a) {
    const double rb = a.beta.real();
    const double d1 = p.Delta1 + 2.0 * p.g1 * rb;
    const double d2 = p.Delta2 + 2.0 * p.g2 * rb;
    return {
        (I * d1 + p.kappa1) * a.a1 + I * p.J1 * a.a2 + I * p.J2 * a.rho - E1,
        (I * d2 + p.kappa2) * a.a2 + I * p.J1 * a.a1 - E2,
        (I * p.Delta_en + p.f) * a.rho + I * std::conj(p.J2) * a.a1 + 2.0 * I * p.J3 * rb,
        (I * p.omega_m + p.gamma) * a.beta + I * p.g1 * std::norm(a.a1) +
            I * p.g2 * std::norm(a.a2) + 2.0 * I * p.J3 * a.rho.real(),
    };
}

inline Eigen::Matrix<double, 8, 1> residual(const BareParams& p, const Complex& E1,
                                            const Complex& E2,
                                            const Eigen::Matrix<double, 8, 1>& x) {
    const auto F = lhs(p, E1, E2, unpack(x));
    Eigen::Matrix<double, 8, 1> r;
    for (int k = 0; k < 4; ++k) {
        r[2 * k] = F[k].real();
        r[2 * k + 1] = F[k].imag();
    }
    return r;
}

inline Eigen::Matrix<double, 8, 8> jacobian(const BareParams& p,
                                            const Eigen::Matrix<double, 8, 1>& x) {
    const auto a = unpack(x);
    const double rb = a.beta.real();
    const double d1 = p.Delta1 + 2.0 * p.g1 * rb;
    const double d2 = p.Delta2 + 2.0 * p.g2 * rb;

    // dF[row] / d(x[col]) as complex numbers, split into Re/Im rows below.
    std::array<std::array<Complex, 8>, 4> dF{};
    auto holo = [&](int row, int var, Complex c) {
        dF[row][2 * var] += c;
        dF[row][2 * var + 1] += I * c;
    };
    holo(0, 0, I * d1 + p.kappa1);
    holo(0, 1, I * p.J1);
    holo(0, 2, I * p.J2);
    dF[0][6] += 2.0 * I * p.g1 * a.a1;

    holo(1, 1, I * d2 + p.kappa2);
    holo(1, 0, I * p.J1);
    dF[1][6] += 2.0 * I * p.g2 * a.a2;

    holo(2, 2, I * p.Delta_en + p.f);
    holo(2, 0, I * std::conj(p.J2));
    dF[2][6] += 2.0 * I * p.J3;

    holo(3, 3, I * p.omega_m + p.gamma);
    dF[3][0] += 2.0 * I * p.g1 * a.a1.real();
    dF[3][1] += 2.0 * I * p.g1 * a.a1.imag();
    dF[3][2] += 2.0 * I * p.g2 * a.a2.real();
    dF[3][3] += 2.0 * I * p.g2 * a.a2.imag();
    dF[3][4] += 2.0 * I * p.J3;

    Eigen::Matrix<double, 8, 8> J;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 8; ++col) {
            J(2 * row, col) = dF[row][col].real();
            J(2 * row + 1, col) = dF[row][col].imag();
        }
    }
    return J;
}

// One damped sweep of the rearranged equations; nullopt if a denominator vanishes.
inline std::optional<Eigen::Matrix<double, 8, 1>> fixed_point_step(
    const BareParams& p, const Complex& E1, const Complex& E2,
    const Eigen::Matrix<double, 8, 1>& x, double weight) {
    const auto a = unpack(x);
    const double rb = a.beta.real();
    const Complex c1 = I * (p.Delta1 + 2.0 * p.g1 * rb) + p.kappa1;
    const Complex c2 = I * (p.Delta2 + 2.0 * p.g2 * rb) + p.kappa2;
    const Complex c3 = I * p.Delta_en + p.f;
    const Complex c4 = I * p.omega_m + p.gamma;
    if (c1 == 0.0 || c2 == 0.0 || c3 == 0.0 || c4 == 0.0) return std::nullopt;
    Amplitudes n;
    n.a1 = (E1 - I * p.J1 * a.a2 - I * p.J2 * a.rho) / c1;
    n.a2 = (E2 - I * p.J1 * n.a1) / c2;
    n.rho = -(I * std::conj(p.J2) * n.a1 + 2.0 * I * p.J3 * rb) / c3;
    n.beta = -(I * p.g1 * std::norm(n.a1) + I * p.g2 * std::norm(n.a2) +
               2.0 * I * p.J3 * n.rho.real()) /
             c4;
    SteadyState s;
    s.alpha1 = n.a1;
    s.alpha2 = n.a2;
    s.rho = n.rho;
    s.beta = n.beta;
    return (1.0 - weight) * x + weight * pack(s);
}

enum class Outcome { converged, stalled, singular };

struct Attempt {
    Eigen::Matrix<double, 8, 1> x;
    double residual = 0.0;
    int iterations = 0;
    Outcome outcome = Outcome::stalled;
};

inline Attempt newton(const BareParams& p, const Complex& E1, const Complex& E2,
                      Eigen::Matrix<double, 8, 1> x, const SolverConfig& cfg) {
    Attempt best{x, residual(p, E1, E2, x).norm(), 0, Outcome::stalled};
    double rn = best.residual;
    const double target = cfg.tol * std::max(1.0, std::hypot(std::abs(E1), std::abs(E2)));
    bool singular = false;
    int it = 0;
    for (; it < cfg.max_iter && rn >= target; ++it) {
        const auto F = residual(p, E1, E2, x);
        Eigen::PartialPivLU<Eigen::Matrix<double, 8, 8>> lu(jacobian(p, x));
        if (!(lu.rcond() > 1e-14)) {
            singular = true;
            break;
        }
        const Eigen::Matrix<double, 8, 1> dx = lu.solve(-F);
        double lambda = cfg.damping;
        Eigen::Matrix<double, 8, 1> trial = x + lambda * dx;
        double trial_rn = residual(p, E1, E2, trial).norm();
        for (int h = 0; h < 40 && !(trial_rn < rn); ++h) {
            lambda *= 0.5;
            trial = x + lambda * dx;
            trial_rn = residual(p, E1, E2, trial).norm();
        }
        if (!(trial_rn < rn)) break;  // no descent along the Newton direction
        x = trial;
        rn = trial_rn;
        if (rn < best.residual) best = {x, rn, it + 1, Outcome::stalled};
    }
    best.iterations = it;
    if (best.residual < target) {
        for (int k = 0; k < 2 && best.residual > 0.0; ++k) {
            Eigen::PartialPivLU<Eigen::Matrix<double, 8, 8>> lu(jacobian(p, best.x));
            const Eigen::Matrix<double, 8, 1> trial =
                best.x - lu.solve(residual(p, E1, E2, best.x));
            const double trial_rn = residual(p, E1, E2, trial).norm();
            if (!(trial_rn < best.residual)) break;
            best.x = trial;
            best.residual = trial_rn;
        }
        best.outcome = Outcome::converged;
        return best;
    }
    if (!singular) return best;

    // Jacobian singular: fall back to damped fixed-point iteration.
    for (int k = 0; k < cfg.max_iter; ++k) {
        auto next = fixed_point_step(p, E1, E2, x, 0.5);
        if (!next) break;
        x = *next;
        rn = residual(p, E1, E2, x).norm();
        if (rn < best.residual) best = {x, rn, it + k + 1, Outcome::stalled};
        if (rn < target) {
            best.outcome = Outcome::converged;
            return best;
        }
    }
    best.outcome = Outcome::singular;
    return best;
}

inline SteadyState finish(const BareParams& p, const Eigen::Matrix<double, 8, 1>& x,
                          double rn, int iterations) {
    const auto a = unpack(x);
    SteadyState s;
    s.alpha1 = a.a1;
    s.alpha2 = a.a2;
    s.rho = a.rho;
    s.beta = a.beta;
    s.Delta1_eff = p.Delta1 + 2.0 * p.g1 * a.beta.real();
    s.Delta2_eff = p.Delta2 + 2.0 * p.g2 * a.beta.real();
    s.residual_norm = rn;
    s.iterations = iterations;
    return s;
}

}  // namespace steady_detail

/// Real and imaginary parts of the four mean-field equations evaluated at the
/// candidate amplitudes. Effective detunings are recomputed from s.beta.
inline SteadyVector steady_residual(const BareParams& p, const Drives& d, const SteadyState& s) {
    const auto r = steady_detail::residual(p, d.E1, d.E2, steady_detail::pack(s));
    SteadyVector out{};
    for (int k = 0; k < 8; ++k) out[k] = r[k];
    return out;
}

inline double steady_residual_norm(const BareParams& p, const Drives& d, const SteadyState& s) {
    return steady_detail::residual(p, d.E1, d.E2, steady_detail::pack(s)).norm();
}

/// Solves the mean-field equations by damped Newton iteration.
///
/// Starts from `seed` (all zeros by default, the exact weak-drive limit).
/// If that fails, ramps the drive amplitudes from zero in ten steps,
/// re-seeding each step with the previous solution. The returned branch is
/// the one continuously connected to zero drive; other branches of a
/// bistable system are not reported.
///
/// Throws NonConvergence (carrying the best residual seen) or
/// SingularJacobian when Newton and the fixed-point fallback both fail on a
/// singular Jacobian.
inline SteadyState solve_steady_state(const BareParams& p, const Drives& d,
                                      const SolverConfig& cfg = {},
                                      const std::optional<SteadyState>& seed = std::nullopt) {
    using namespace steady_detail;
    if (auto r = validate_config(cfg); !r.ok()) throw InvalidInput("solver config: " + r.summary());
    if (auto r = validate_bare(p); !r.ok()) throw InvalidInput("bare parameters: " + r.summary());

    Eigen::Matrix<double, 8, 1> x0 = seed ? pack(*seed) : Eigen::Matrix<double, 8, 1>::Zero();
    Attempt direct = newton(p, d.E1, d.E2, x0, cfg);
    if (direct.outcome == Outcome::converged) {
        return finish(p, direct.x, direct.residual, direct.iterations);
    }

    constexpr int kRampSteps = 10;
    Eigen::Matrix<double, 8, 1> x = Eigen::Matrix<double, 8, 1>::Zero();
    int total = direct.iterations;
    Attempt step;
    for (int k = 1; k <= kRampSteps; ++k) {
        const double s = static_cast<double>(k) / kRampSteps;
        step = newton(p, s * d.E1, s * d.E2, x, cfg);
        total += step.iterations;
        if (step.outcome != Outcome::converged) break;
        x = step.x;
    }
    if (step.outcome == Outcome::converged) return finish(p, step.x, step.residual, total);

    const double best = std::min(direct.residual, step.residual);
    if (direct.outcome == Outcome::singular || step.outcome == Outcome::singular) {
        throw SingularJacobian("steady state: Newton Jacobian singular and fixed-point fallback "
                               "did not converge (best residual " +
                               std::to_string(best) + ")");
    }
    throw NonConvergence("steady state: no convergence within " + std::to_string(cfg.max_iter) +
                             " iterations (best residual " + std::to_string(best) + ")",
                         best);
}

struct EffectiveCouplings {
    double G1 = 0.0;
    double G2 = 0.0;
    double theta = 0.0;  // arg(g2 a2) - arg(g1 a1), in [0, 2*pi)
};

/// Linearized optomechanical couplings with the cavity-1 phase gauged to zero.
inline EffectiveCouplings effective_couplings(const BareParams& p, const SteadyState& s) {
    const Complex c1 = p.g1 * s.alpha1;
    const Complex c2 = p.g2 * s.alpha2;
    EffectiveCouplings e;
    e.G1 = std::abs(c1);
    e.G2 = std::abs(c2);
    if (c1 == 0.0) {
        if (c2 != 0.0) {
            throw ZeroAmplitude("effective couplings: g1*alpha1 vanishes, relative phase undefined");
        }
        return e;
    }
    e.theta = c2 == 0.0 ? 0.0 : canonical_phase(std::arg(c2) - std::arg(c1));
    return e;
}

}  // namespace nonrecip
