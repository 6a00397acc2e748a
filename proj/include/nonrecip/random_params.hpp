#pragma once

// Random parameter draws for property checks: rates log-uniform over
// [lo, hi] in the reference unit, phases uniform on [0, 2*pi), complex J3.

#include <algorithm>
#include <cmath>
#include <random>

#include "nonrecip/core_types.hpp"
#include "nonrecip/steady_state.hpp"

namespace nonrecip {

struct DrawRange {
    double lo = 1e-2;
    double hi = 1e2;
};

template <class Rng>
double log_uniform(Rng& rng, DrawRange r) {
    std::uniform_real_distribution<double> u(std::log(r.lo), std::log(r.hi));
    return std::exp(u(rng));
}

template <class Rng>
ModelParams random_model_params(Rng& rng, DrawRange r = {}) {
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    ModelParams p;
    p.kappa1 = log_uniform(rng, r);
    p.kappa2 = log_uniform(rng, r);
    p.gamma = log_uniform(rng, r);
    p.f = log_uniform(rng, r);
    p.G1 = log_uniform(rng, r);
    p.G2 = log_uniform(rng, r);
    p.J1 = log_uniform(rng, r);
    p.J2 = log_uniform(rng, r);
    p.J3 = std::polar(log_uniform(rng, r), phase(rng));
    p.theta = phase(rng);
    p.phi = phase(rng);
    return p;
}

/// Detuning with random sign and log-uniform magnitude.
template <class Rng>
double random_detuning(Rng& rng, DrawRange r = {}) {
    std::bernoulli_distribution sign(0.5);
    const double m = log_uniform(rng, r);
    return sign(rng) ? m : -m;
}

/// Bare parameters for steady-state property checks. Optomechanical
/// couplings are weak relative to the rates.
template <class Rng>
BareParams random_bare_params(Rng& rng) {
    std::uniform_real_distribution<double> detuning(-5.0, 5.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    BareParams p;
    p.Delta1 = detuning(rng);
    p.Delta2 = detuning(rng);
    p.Delta_en = detuning(rng);
    p.omega_m = log_uniform(rng, {1.0, 10.0});
    p.g1 = log_uniform(rng, {1e-3, 1e-1});
    p.g2 = log_uniform(rng, {1e-3, 1e-1});
    p.J1 = log_uniform(rng, {0.1, 10.0});
    p.J2 = std::polar(log_uniform(rng, {0.1, 10.0}), phase(rng));
    p.kappa1 = log_uniform(rng, {0.1, 10.0});
    p.kappa2 = log_uniform(rng, {0.1, 10.0});
    p.gamma = log_uniform(rng, {0.1, 10.0});
    p.f = log_uniform(rng, {0.1, 10.0});
    // Keep the real-linear ensemble/mechanics loop gain
    // 4 |J3|^2 / (|f + i Delta_en| |gamma + i omega_m|) at or below 1/2.
    const double j3_cap = std::sqrt(std::abs(Complex(p.f, p.Delta_en)) *
                                    std::abs(Complex(p.gamma, p.omega_m)) / 8.0);
    p.J3 = std::polar(j3_cap * log_uniform(rng, {1e-2, 1.0}), phase(rng));
    return p;
}

/// Drives scaled so the estimated detuning shift 2 g_j |beta| stays below
/// min(kappa1, kappa2) / 2. The estimate adds the linear part of beta (fed
/// through J3 by the ensemble, found with g = 0) to the radiation-pressure
/// force of the linear cavity amplitudes. |E_j| never exceeds 10 kappa_j.
template <class Rng>
Drives random_drives(Rng& rng, const BareParams& p) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    Drives d;
    d.E1 = std::polar(p.kappa1, phase(rng));
    d.E2 = std::polar(p.kappa2, phase(rng));
    d.Ep1 = 1.0;

    BareParams lin = p;
    lin.g1 = lin.g2 = 0.0;
    const auto s0 = solve_steady_state(lin, d);
    const double gmax = std::max(p.g1, p.g2);
    const double b1 = std::abs(s0.beta);
    const double b2 = (p.g1 * std::norm(s0.alpha1) + p.g2 * std::norm(s0.alpha2)) /
                      std::abs(Complex(p.gamma, p.omega_m));
    const double budget = 0.25 * std::min(p.kappa1, p.kappa2) / gmax;  // b1 s + b2 s^2 <= budget
    const double s_max = b2 > 0.0 ? 2.0 * budget / (b1 + std::sqrt(b1 * b1 + 4.0 * b2 * budget))
                                  : budget / std::max(b1, 1e-300);
    const double scale = unit(rng) * std::min(s_max, 10.0);
    d.E1 *= scale;
    d.E2 *= scale;
    return d;
}

}  // namespace nonrecip
