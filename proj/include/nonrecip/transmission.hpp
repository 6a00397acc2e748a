#pragma once

// Input-output relations and transmission amplitudes between the cavities.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

#include "nonrecip/core_types.hpp"
#include "nonrecip/response.hpp"

namespace nonrecip {

struct OutputFields {
    Complex Eout1{0.0, 0.0};
    Complex Eout2{0.0, 0.0};
};

namespace transmission_detail {

inline void require_open_cavities(const ModelParams& p) {
    if (!(p.kappa1 > 0.0) || !(p.kappa2 > 0.0)) {
        throw InvalidInput("input-output relations need kappa1 > 0 and kappa2 > 0");
    }
}

}  // namespace transmission_detail

/// Output sideband amplitudes Eout_j = sqrt(kappa_j) da_j - Ep_j / sqrt(kappa_j).
inline OutputFields output_fields(const ModelParams& p, double y, double Ep1, double Ep2) {
    transmission_detail::require_open_cavities(p);
    const auto s = solve_response(p, y, Ep1, Ep2);
    const double s1 = std::sqrt(p.kappa1);
    const double s2 = std::sqrt(p.kappa2);
    return {s1 * s.da1 - Ep1 / s1, s2 * s.da2 - Ep2 / s2};
}

/// T12 = |Eout2 / Ein1| with cavity 2 undriven, T21 the reverse.
/// With Ein_j = Ep_j / sqrt(kappa_j) these are sqrt(kappa1 kappa2) times the
/// off-diagonal entries of the inverse response matrix.
inline TransmissionPoint transmission_pair(const ModelParams& p, double y) {
    transmission_detail::require_open_cavities(p);
    const ResponseFactor lu(p, y);
    Vector4c e1 = Vector4c::Zero();
    Vector4c e2 = Vector4c::Zero();
    e1[0] = 1.0;
    e2[1] = 1.0;
    const Vector4c col1 = lu.solve(e1);
    const Vector4c col2 = lu.solve(e2);
    const double scale = std::sqrt(p.kappa1 * p.kappa2);
    return {y, scale * std::abs(col1[1]), scale * std::abs(col2[0])};
}

enum class Direction { forward_1to2, forward_2to1, reciprocal };

inline std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::forward_1to2: return "forward_1to2";
        case Direction::forward_2to1: return "forward_2to1";
        case Direction::reciprocal: return "reciprocal";
    }
    return "?";
}

struct IsolationMetrics {
    double T12 = 0.0;
    double T21 = 0.0;
    double isolation_db = 0.0;
    Direction direction = Direction::reciprocal;
};

inline constexpr double kDefaultIsolationCapDb = 300.0;

inline IsolationMetrics isolation_metrics(const TransmissionPoint& tp,
                                          double cap_db = kDefaultIsolationCapDb) {
    IsolationMetrics m;
    m.T12 = tp.T12;
    m.T21 = tp.T21;
    const double hi = std::max(tp.T12, tp.T21);
    const double lo = std::min(tp.T12, tp.T21);
    if (std::abs(tp.T12 - tp.T21) <= 1e-9 * std::max(hi, 1e-30)) {
        m.direction = Direction::reciprocal;
    } else {
        m.direction = tp.T12 > tp.T21 ? Direction::forward_1to2 : Direction::forward_2to1;
    }
    if (hi == lo) {
        m.isolation_db = 0.0;
    } else if (lo <= 0.0) {
        m.isolation_db = cap_db;
    } else {
        m.isolation_db = std::min(20.0 * std::log10(hi / lo), cap_db);
    }
    return m;
}

}  // namespace nonrecip
