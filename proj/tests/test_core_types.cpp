#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nonrecip/core_types.hpp"
#include "nonrecip/figures.hpp"
#include "nonrecip/random_params.hpp"

using namespace nonrecip;

TEST(CoreTypes, BaseFigureSetIsValid) {
    auto p = base_figure_params();
    p.theta = p.phi = std::numbers::pi / 2.0;
    EXPECT_TRUE(validate_params(p).ok()) << validate_params(p).summary();
}

TEST(CoreTypes, NegativeRateReportsItsName) {
    auto p = base_figure_params();
    p.kappa1 = -1.0;
    const auto r = validate_params(p);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0], "kappa1 nonnegative");
}

TEST(CoreTypes, EveryViolationIsListed) {
    auto p = base_figure_params();
    p.gamma = -1.0;
    p.G2 = std::nan("");
    p.J2 = Complex(-0.1, 0.0);
    p.J3 = Complex(0.0, INFINITY);
    EXPECT_EQ(validate_params(p).violations.size(), 4u);
}

TEST(CoreTypes, ZeroRatesAreAllowed) {
    ModelParams p;
    EXPECT_TRUE(validate_params(p).ok());
}

TEST(CoreTypes, PhaseWrapsIntoPrincipalRange) {
    EXPECT_NEAR(canonical_phase(kTwoPi + 0.1), 0.1, 1e-15);
    EXPECT_NEAR(canonical_phase(-0.1), kTwoPi - 0.1, 1e-15);
    EXPECT_EQ(canonical_phase(kTwoPi), 0.0);
    EXPECT_EQ(canonical_phase(-1e-300), 0.0);
    EXPECT_LT(canonical_phase(-1e-17), kTwoPi);
}

TEST(CoreTypes, CanonicalizeIsIdempotent) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> wide(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        auto p = base_figure_params();
        p.theta = wide(rng);
        p.phi = wide(rng);
        const auto once = canonicalize(p);
        EXPECT_EQ(canonicalize(once), once);
        EXPECT_GE(once.theta, 0.0);
        EXPECT_LT(once.theta, kTwoPi);
    }
}

TEST(CoreTypes, UnitConversionScalesEveryRate) {
    auto p = base_figure_params();
    p.kappa2 = 4.0;
    p.J2 = Complex(0.2, -0.4);
    const auto q = convert_units(p, RateReference::kappa2);
    EXPECT_EQ(q.unit.reference, RateReference::kappa2);
    EXPECT_DOUBLE_EQ(q.unit.value, 4.0);
    EXPECT_DOUBLE_EQ(q.kappa2, 1.0);
    EXPECT_DOUBLE_EQ(q.gamma, 0.25);
    EXPECT_DOUBLE_EQ(q.f, 2.5);
    EXPECT_DOUBLE_EQ(q.J2.real(), 0.05);
    EXPECT_DOUBLE_EQ(q.J2.imag(), -0.1);
    EXPECT_DOUBLE_EQ(q.J3.imag(), 4.476 / 4.0);
    EXPECT_EQ(q.theta, p.theta);
}

TEST(CoreTypes, UnitRoundTripIsNearlyExact) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        auto p = random_model_params(rng);
        p.gamma = 1.0;  // consistent with the gamma unit label
        const auto back = convert_units(convert_units(p, RateReference::kappa2), RateReference::gamma);
        for (auto [a, b] : {std::pair{p.kappa1, back.kappa1}, {p.kappa2, back.kappa2},
                            {p.f, back.f}, {p.G1, back.G1}, {p.J1, back.J1}}) {
            EXPECT_LT(std::abs(a - b) / a, 1e-14);
        }
        EXPECT_LT(std::abs(p.J3 - back.J3) / std::abs(p.J3), 1e-14);
        EXPECT_LT(std::abs(back.unit.value - 1.0), 1e-14);
    }
}

TEST(CoreTypes, ConversionRejectsZeroReference) {
    auto p = base_figure_params();
    p.kappa2 = 0.0;
    EXPECT_THROW(convert_units(p, RateReference::kappa2), InvalidInput);
}

TEST(CoreTypes, RateReferenceNames) {
    for (auto r : {RateReference::gamma, RateReference::kappa2, RateReference::absolute}) {
        EXPECT_EQ(parse_rate_reference(to_string(r)), r);
    }
    EXPECT_THROW(parse_rate_reference("kappa1"), InvalidInput);
}

TEST(CoreTypes, DriveValidation) {
    Drives d;
    d.Ep1 = -1.0;
    EXPECT_FALSE(validate_drives(d).ok());
    d.Ep1 = 1.0;
    EXPECT_TRUE(validate_drives(d).ok());
}

TEST(CoreTypes, BareValidationNeedsPositiveMechanicalFrequency) {
    BareParams b;
    b.omega_m = 0.0;
    EXPECT_FALSE(validate_bare(b).ok());
}
