#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nonrecip/figures.hpp"
#include "nonrecip/io.hpp"
#include "nonrecip/sweep.hpp"

using namespace nonrecip;

namespace {

ModelParams quarter_turn() {
    auto p = base_figure_params();
    p.theta = p.phi = std::numbers::pi / 2.0;
    return p;
}

}  // namespace

TEST(Sweep, SinglePointMatchesDirectEvaluation) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"y", 0.37, 0.37, 1};
    s.observables = {Observable::T12, Observable::T21, Observable::isolation_db};
    const auto ds = sweep(s);
    ASSERT_EQ(ds.rows.size(), 1u);
    const auto tp = transmission_pair(s.fixed, 0.37);
    EXPECT_EQ(*ds.rows[0].values[0], tp.T12);
    EXPECT_EQ(*ds.rows[0].values[1], tp.T21);
    EXPECT_EQ(*ds.rows[0].values[2], isolation_metrics(tp).isolation_db);
    EXPECT_EQ(ds.rows[0].status, "ok");
}

TEST(Sweep, AxisEndpointsAreExact) {
    const Axis a{"y", -5.0, 5.0, 1001};
    EXPECT_EQ(a.at(0), -5.0);
    EXPECT_EQ(a.at(500), 0.0);
    EXPECT_EQ(a.at(1000), 5.0);
    const Axis t{"theta", 0.0, kTwoPi, 201};
    EXPECT_EQ(t.at(200), kTwoPi);
}

TEST(Sweep, SecondAxisIsOuterLoop) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"theta", 0.0, 1.0, 3};
    s.axis2 = Axis{"J3.im", 1.0, 2.0, 2};
    const auto ds = sweep(s, 1);
    ASSERT_EQ(ds.rows.size(), 6u);
    EXPECT_EQ(ds.rows[1].axes, (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(ds.rows[3].axes, (std::vector<double>{0.0, 2.0}));
    auto p = s.fixed;
    p.theta = 0.5;
    p.J3 = Complex(0.0, 2.0);
    EXPECT_EQ(*ds.rows[4].values[0], transmission_pair(p, 0.0).T12);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"y", -5.0, 5.0, 301};
    EXPECT_EQ(to_csv(sweep(s, 1)), to_csv(sweep(s, 7)));
}

TEST(Sweep, PoleIsReportedNotFatal) {
    // Lossless mechanics and ensemble with no couplings: A1 is singular at y = 0.
    SweepSpec s;
    s.fixed.kappa1 = 1.0;
    s.fixed.kappa2 = 1.0;
    s.axis1 = {"gamma", 0.0, 1.0, 2};
    const auto ds = sweep(s);
    EXPECT_EQ(ds.rows[0].status, "singular");
    EXPECT_FALSE(ds.rows[0].values[0].has_value());
    EXPECT_EQ(ds.rows[1].status, "singular");  // f = 0 keeps the ensemble pole
    s.fixed.f = 1.0;
    const auto fixed = sweep(s);
    EXPECT_EQ(fixed.rows[0].status, "singular");
    EXPECT_EQ(fixed.rows[1].status, "ok");
    EXPECT_NE(to_csv(fixed).find(",,singular\n"), std::string::npos);
}

TEST(Sweep, ClosedCavityIsReportedInvalid) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"kappa1", 0.0, 1.0, 2};
    const auto ds = sweep(s);
    EXPECT_EQ(ds.rows[0].status, "invalid");
    EXPECT_EQ(ds.rows[1].status, "ok");
}

TEST(Sweep, UnknownParameterPathThrows) {
    EXPECT_THROW(parse_parameter_path("J4"), InvalidParameterPath);
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"kappa3", 0.0, 1.0, 2};
    EXPECT_THROW(sweep(s), InvalidParameterPath);
}

TEST(Sweep, InvalidAxesAreRejected) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"y", 1.0, -1.0, 5};
    EXPECT_THROW(sweep(s), InvalidInput);
    s.axis1 = {"y", -1.0, 1.0, 0};
    EXPECT_THROW(sweep(s), InvalidInput);
    s.axis1 = {"y", -1.0, 1.0, 3};
    s.observables.clear();
    EXPECT_THROW(sweep(s), InvalidInput);
}

TEST(Sweep, EveryParameterPathIsWritable) {
    ModelParams p;
    double y = 0.0;
    for (const char* name : {"y", "theta", "phi", "kappa1", "kappa2", "gamma", "f", "G1", "G2",
                             "J1", "J2", "J2.re", "J2.im", "J3.re", "J3.im"}) {
        assign(p, y, parse_parameter_path(name), 0.25);
    }
    EXPECT_EQ(y, 0.25);
    EXPECT_EQ(p.J2, Complex(0.25, 0.25));
    EXPECT_EQ(p.J3, Complex(0.25, 0.25));
    EXPECT_EQ(p.G2, 0.25);
}

TEST(Observables, NamesRoundTrip) {
    for (auto o : {Observable::T12, Observable::T21, Observable::isolation_db}) {
        EXPECT_EQ(parse_observable(to_string(o)), o);
    }
    EXPECT_THROW(parse_observable("R12"), InvalidInput);
}

TEST(Csv, HeaderAndNumberFormat) {
    SweepSpec s;
    s.fixed = quarter_turn();
    s.axis1 = {"y", 0.0, 0.0, 1};
    std::istringstream in(to_csv(sweep(s)));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "y,T12,T21,status");
    EXPECT_EQ(row.substr(0, 24), "0.0000000000000000e+00,3");
    EXPECT_EQ(row.substr(row.size() - 3), ",ok");
}

TEST(Json, ModelParamsRoundTrip) {
    auto p = quarter_turn();
    p.J2 = Complex(0.01, -0.002);
    p.unit = {RateReference::kappa2, 2.5};
    const auto j = to_json(p);
    EXPECT_EQ(j["schema_version"], kSchemaVersion);
    EXPECT_EQ(model_params_from_json(json::parse(j.dump())), p);
}

TEST(Json, RealCouplingMayBeANumber) {
    const auto j = json::parse(R"({"kappa1": 1, "kappa2": 1, "gamma": 1, "f": 2, "J2": 0.5, "theta": 7})");
    const auto p = model_params_from_json(j);
    EXPECT_EQ(p.J2, Complex(0.5, 0.0));
    EXPECT_NEAR(p.theta, 7.0 - kTwoPi, 1e-15);
}

TEST(Json, UnknownKeysAreRejected) {
    EXPECT_THROW(model_params_from_json(json::parse(R"({"kappa": 1})")), ConfigError);
    EXPECT_THROW(drives_from_json(json::parse(R"({"E3": 1})")), ConfigError);
}

TEST(Json, BareAndDrivesRoundTrip) {
    BareParams b;
    b.Delta1 = 0.5;
    b.g2 = 0.01;
    b.J3 = Complex(0.1, 2.0);
    const auto b2 = bare_params_from_json(json::parse(to_json(b).dump()));
    EXPECT_EQ(b2.Delta1, b.Delta1);
    EXPECT_EQ(b2.g2, b.g2);
    EXPECT_EQ(b2.J3, b.J3);
    Drives d;
    d.E2 = Complex(0.0, 3.0);
    d.Ep1 = 1.0;
    const auto d2 = drives_from_json(json::parse(to_json(d).dump()));
    EXPECT_EQ(d2.E2, d.E2);
    EXPECT_EQ(d2.Ep1, 1.0);
}

TEST(Json, MissingFileIsConfigError) {
    EXPECT_THROW(load_json_file("/nonexistent/params.json"), ConfigError);
}

TEST(Json, SampleParameterFileLoads) {
    const auto p = model_params_from_json(load_json_file(NONRECIP_SAMPLES_DIR "/fig2_params.json"));
    EXPECT_TRUE(validate_params(p).ok());
    EXPECT_NEAR(transmission_pair(p, 0.0).T21, 0.99658, 5e-6);
}
