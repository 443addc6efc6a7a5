#include "cvp/errors.hpp"
#include "cvp/fixtures.hpp"
#include "cvp/pipeline.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace cvp;

namespace {

const Fixture& fixture(const std::string& label) {
    for (const Fixture& f : builtin_fixtures())
        if (f.request.label == label) return f;
    throw std::runtime_error("no fixture " + label);
}

AnalysisRequest balanced_request(NeutralConfig n) {
    AnalysisRequest r;
    r.label = "balanced";
    r.voltages = balanced_set(230.0, Unit::volt);
    r.currents = from_polar_deg(10.0, -25.0) * balanced_set(1.0, Unit::ampere);
    r.neutral = n;
    return r;
}

void expect_all_pass(const Fixture& f, const AnalysisReport& r) {
    for (const CheckOutcome& o : evaluate_fixture(f, r)) {
        EXPECT_TRUE(o.pass) << o.label << ' ' << o.check->quantity << " expected " << o.check->expected
                            << " observed " << o.observed << " tol " << describe_tolerance(*o.check);
    }
}

} // namespace

TEST(Fixtures, TwoReferenceCases) {
    const auto& fx = builtin_fixtures();
    ASSERT_EQ(fx.size(), 2u);
    EXPECT_EQ(fx[0].request.label, "example1");
    EXPECT_EQ(fx[1].request.label, "example2");
    EXPECT_GT(fx[0].checks.size(), 20u);
    EXPECT_GT(fx[1].checks.size(), 20u);
    EXPECT_EQ(fx[0].request.unit_system, UnitSystem::per_unit);
    EXPECT_EQ(fx[1].request.frequency_hz, 60.0);
}

TEST(Analyze, Example1AllFieldsWithinTolerance) {
    const Fixture& f = fixture("example1");
    expect_all_pass(f, analyze(f.request, fixture_options()));
}

TEST(Analyze, Example2AllFieldsWithinTolerance) {
    const Fixture& f = fixture("example2");
    expect_all_pass(f, analyze(f.request, fixture_options()));
}

TEST(Analyze, Example1ExactValues) {
    const AnalysisReport r = analyze(fixture("example1").request);
    EXPECT_LE(std::abs(r.p), 1e-12);
    EXPECT_LE(std::abs(r.q), 1e-12);
    const double s = 3.0 * std::sqrt(35.0) / 5.0;
    EXPECT_NEAR(r.d_e_norm, s, 1e-9 * s);
    EXPECT_NEAR(r.s_e_norm, s, 1e-9 * s);
    EXPECT_NEAR(r.d_pm_e_norm, s, 1e-9 * s);
    ASSERT_TRUE(r.pf);
    EXPECT_LE(std::abs(*r.pf), 1e-12);
    EXPECT_NEAR(std::abs(r.equivalents.i_n), std::sqrt(63.0) / 5.0, 1e-9);
    // closed form: atan2 of the summed rectangular parts, frozen at 18 digits
    EXPECT_NEAR(angle_deg(r.equivalents.i_n), -109.106605350869094, 1e-6);
    ASSERT_TRUE(r.instantaneous);
    EXPECT_NEAR(r.instantaneous->sigma_d, 2.50998007960222664, 1e-9);
    EXPECT_LE(std::abs(r.instantaneous->mean_p), 1e-12);
}

TEST(Analyze, Example1SequenceCrossFollowsTransformationLaw) {
    const AnalysisReport r = analyze(fixture("example1").request);
    const auto a = oracle::fortescue_trig();
    const auto law = oracle::matvec(oracle::conj(a), oracle::vec(r.d_e));
    const auto det = oracle::det_leibniz(a);
    EXPECT_NEAR(std::abs(r.d_pm_e.plus - det * law[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.d_pm_e.minus - det * law[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.d_pm_e.homopolar - det * law[2]), 0.0, 1e-12);
}

TEST(Analyze, BalancedFourAndThreeWireAgree) {
    const AnalysisReport a = analyze(balanced_request(NeutralConfig::three_wire()));
    const AnalysisReport b = analyze(balanced_request(NeutralConfig::four_wire(2.0)));
    EXPECT_NEAR(a.p, 3.0 * 2300.0 * std::cos(25.0 / deg_per_rad), 1e-9 * a.s_e_norm);
    EXPECT_NEAR(a.q, 3.0 * 2300.0 * std::sin(25.0 / deg_per_rad), 1e-9 * a.s_e_norm);
    EXPECT_LE(a.d_e_norm, 1e-9 * a.s_e_norm);
    EXPECT_NEAR(a.s_e_norm, b.s_e_norm, 1e-12 * a.s_e_norm);
    EXPECT_NEAR(*a.pf, std::cos(25.0 / deg_per_rad), 1e-12);
}

TEST(Analyze, SignedPowerFactorForGeneration) {
    AnalysisRequest r = balanced_request(NeutralConfig::three_wire());
    r.currents = Phasor(-1.0) * r.currents;
    const AnalysisReport rep = analyze(r);
    ASSERT_TRUE(rep.pf);
    EXPECT_LT(*rep.pf, 0.0);
}

TEST(Analyze, ZeroCurrentHasNoPowerFactor) {
    AnalysisRequest r = balanced_request(NeutralConfig::four_wire(1.0));
    r.currents = PhasorTriple({}, {}, {}, Unit::ampere);
    const AnalysisReport rep = analyze(r);
    EXPECT_FALSE(rep.pf);
    EXPECT_EQ(rep.s_e_norm, 0.0);
}

TEST(Analyze, RejectsInvalidRequests) {
    AnalysisRequest r = balanced_request(NeutralConfig::four_wire(-1.0));
    EXPECT_THROW(analyze(r), InvalidConfig);
    r.neutral = NeutralConfig::four_wire(1.0);
    r.frequency_hz = 0.0;
    EXPECT_THROW(analyze(r), InvalidInput);
    r.frequency_hz = 50.0;
    r.voltages[2] = Phasor(INFINITY, 0.0);
    EXPECT_THROW(analyze(r), InvalidInput);
    r = fixture("example1").request;
    r.neutral = NeutralConfig::three_wire();
    EXPECT_THROW(analyze(r), KclViolation);
    AnalysisOptions o;
    o.samples_per_cycle = 8;
    EXPECT_THROW(analyze(fixture("example1").request, o), InvalidConfig);
}

TEST(Analyze, InstantaneousIsOptional) {
    AnalysisOptions o;
    o.instantaneous = false;
    EXPECT_FALSE(analyze(fixture("example2").request, o).instantaneous);
    EXPECT_FALSE(analyze(fixture("example2").request, o).ieee1459);
}

TEST(Ieee1459, Example2) {
    const AnalysisReport r = analyze(fixture("example2").request, fixture_options());
    ASSERT_TRUE(r.ieee1459);
    // brute force from the reference positive-sequence magnitudes
    const double s_plus = 159.10 * 5.33;
    const double s_u = std::sqrt(876.05 * 876.05 - s_plus * s_plus);
    EXPECT_NEAR(r.ieee1459->s_plus, s_plus, 0.02 * s_plus);
    EXPECT_NEAR(r.ieee1459->s_u, s_u, 0.02 * s_u);
    EXPECT_NEAR(r.ieee1459->s_plus, 848.0, 0.02 * 848.0);
    EXPECT_NEAR(r.ieee1459->s_u, 220.0, 0.02 * 220.0);
}

TEST(Ieee1459, BalancedHasNoUnbalancePower) {
    AnalysisOptions o;
    o.ieee1459 = true;
    for (NeutralConfig n : {NeutralConfig::three_wire(), NeutralConfig::four_wire(0.0), NeutralConfig::four_wire(5.0)}) {
        const AnalysisReport r = analyze(balanced_request(n), o);
        ASSERT_TRUE(r.ieee1459);
        EXPECT_LE(r.ieee1459->s_u, 1e-9 * r.s_e_norm);
        EXPECT_NEAR(r.ieee1459->s_plus, r.s_e_norm, 1e-12 * r.s_e_norm);
    }
}

TEST(Ieee1459, NeverExceedsEffectivePower) {
    std::mt19937_64 rng(97);
    AnalysisOptions o;
    o.ieee1459 = true;
    o.instantaneous = false;
    for (int n = 0; n < 200; ++n) {
        AnalysisRequest r;
        r.voltages = oracle::random_triple(rng, 400.0, Unit::volt);
        r.currents = oracle::random_triple(rng, 50.0, Unit::ampere);
        r.neutral = NeutralConfig::four_wire(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
        const AnalysisReport rep = analyze(r, o);
        EXPECT_LE(rep.ieee1459->s_plus, rep.s_e_norm * (1.0 + 1e-12));
        EXPECT_NEAR(rep.ieee1459->s_plus * rep.ieee1459->s_plus + rep.ieee1459->s_u * rep.ieee1459->s_u,
                    rep.s_e_norm * rep.s_e_norm, 1e-9 * rep.s_e_norm * rep.s_e_norm);
    }
}

TEST(Integrity, WrongKFactorIsCaught) {
    // k(2.4) replaced by rho k(2.4); both routes no longer describe the same coordinates
    const Fixture& f = fixture("example2");
    FourWireEquivalents eq = equivalent_phase_route(f.request.voltages, f.request.currents, 2.4, 0.621);
    std::tie(eq.v_pm_e, eq.i_pm_e) = equivalent_sequence_route(eq.v_o, f.request.currents, *eq.correction);
    EXPECT_THROW(assemble_report(f.request, eq, fixture_options()), IntegrityError);

    AnalysisOptions loose = fixture_options();
    loose.integrity_tolerance = 1.0;
    const AnalysisReport r = assemble_report(f.request, eq, loose);
    int failed = 0;
    for (const CheckOutcome& o : evaluate_fixture(f, r)) failed += o.pass ? 0 : 1;
    EXPECT_GT(failed, 0);
}

TEST(Integrity, RhoSweepStaysConsistent) {
    const Fixture& f = fixture("example2");
    for (double rho : {0.0, 1e-6, 0.1, 1.0, 2.4, 10.0, 1e3, 1e6}) {
        AnalysisRequest r = f.request;
        r.neutral = NeutralConfig::four_wire(rho);
        EXPECT_NO_THROW(analyze(r, fixture_options())) << "rho " << rho;
    }
}

TEST(Integrity, RhoSweepOnUnbalancedCurrents) {
    // balanced voltages: P and Q do not depend on rho, the neutral path only feeds the cross term
    AnalysisRequest r = fixture("example1").request;
    double prev = -1.0;
    for (double rho : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e3}) {
        r.neutral = NeutralConfig::four_wire(rho);
        const AnalysisReport rep = analyze(r);
        EXPECT_LE(std::abs(rep.p), 1e-12 * rep.s_e_norm) << "rho " << rho;
        EXPECT_LE(std::abs(rep.q), 1e-12 * rep.s_e_norm) << "rho " << rho;
        EXPECT_GT(rep.d_e_norm, prev) << "rho " << rho;
        prev = rep.d_e_norm;
    }
}

TEST(Selftest, PassesOnCorrectBuild) {
    std::ostringstream os;
    const SelftestSummary s = run_selftest(os);
    EXPECT_TRUE(s.ok()) << os.str();
    EXPECT_NE(os.str().find("PASS example2 ‖S_e‖ 876.05"), std::string::npos) << os.str();
}

TEST(Selftest, ReportsFailuresFromBrokenAnalyzer) {
    std::ostringstream os;
    const SelftestSummary s = run_selftest(os, [](const AnalysisRequest& req) {
        const FourWireEquivalents good = equivalent_coordinates(req.voltages, req.currents, req.neutral);
        FourWireEquivalents eq = equivalent_phase_route(req.voltages, req.currents, req.neutral.rho, 0.621);
        eq.v_pm_e = good.v_pm_e;
        eq.i_pm_e = good.i_pm_e;
        AnalysisOptions o = fixture_options();
        o.integrity_tolerance = 1.0;
        return assemble_report(req, eq, o);
    });
    EXPECT_FALSE(s.ok());
    EXPECT_GT(s.failed, 0);
    EXPECT_NE(os.str().find("FAIL"), std::string::npos);
}

TEST(Selftest, AnalyzerExceptionCountsAsFailure) {
    std::ostringstream os;
    const SelftestSummary s =
        run_selftest(os, [](const AnalysisRequest&) -> AnalysisReport { throw IntegrityError("boom"); });
    EXPECT_EQ(s.failed, 2);
    EXPECT_EQ(s.passed, 0);
    EXPECT_NE(os.str().find("boom"), std::string::npos);
}
