#include "cvp/errors.hpp"
#include "cvp/power.hpp"
#include "cvp/sequence.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cvp;

namespace {

double relative_gap_roundtrip(const PhasorTriple& x) {
    const PhasorTriple back = from_sequence(to_sequence(x));
    return norm(back - x) / std::max(norm(x), 1e-300);
}

} // namespace

TEST(Fortescue, Unitary) {
    const Matrix3& a = FortescueMatrix::forward();
    const Matrix3 prod = multiply(transpose(a), FortescueMatrix::conjugate());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(prod[i][j] - Phasor(i == j ? 1.0 : 0.0)), 1e-15);

    const Matrix3 id = multiply(FortescueMatrix::inverse(), a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(id[i][j] - Phasor(i == j ? 1.0 : 0.0)), 1e-15);
}

TEST(Fortescue, DeterminantIsMinusJ) {
    const Phasor det = FortescueMatrix::determinant();
    EXPECT_LE(std::abs(det - Phasor(0.0, -1.0)), 1e-15);
    EXPECT_NEAR(std::abs(det), 1.0, 1e-15);
    // Leibniz expansion of the trig-built matrix agrees
    EXPECT_LE(std::abs(oracle::det_leibniz(oracle::fortescue_trig()) - Phasor(0.0, -1.0)), 1e-15);
}

TEST(Fortescue, MatchesTrigConstruction) {
    const auto ref = oracle::fortescue_trig();
    const Matrix3& a = FortescueMatrix::forward();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(a[i][j] - ref[i][j]), 1e-15);
}

TEST(ToSequence, BalancedPositiveSequence) {
    const SequenceTriple s = to_sequence(triple_from_polar_deg({1, 1, 1}, {0, -120, 120}));
    EXPECT_NEAR(std::abs(s.plus - std::sqrt(3.0)), 0.0, 1e-15);
    EXPECT_LT(std::abs(s.minus), 1e-15);
    EXPECT_LT(std::abs(s.homopolar), 1e-15);
}

TEST(ToSequence, PureHomopolar) {
    const SequenceTriple s = to_sequence({1.0, 1.0, 1.0});
    EXPECT_LT(std::abs(s.plus), 1e-15);
    EXPECT_LT(std::abs(s.minus), 1e-15);
    EXPECT_NEAR(std::abs(s.homopolar - std::sqrt(3.0)), 0.0, 1e-15);
}

TEST(ToSequence, Example1Currents) {
    const SequenceTriple s = to_sequence(triple_from_polar_deg({1, 0.2, 0.8}, {-90, -30, -150}));
    const double m = std::sqrt(21.0) / 5.0;
    EXPECT_LT(std::abs(s.plus), 1e-15);
    EXPECT_NEAR(std::abs(s.minus), m, 1e-14);
    EXPECT_NEAR(angle_distance_deg(angle_deg(s.minus), -70.893), 0.0, 5e-4);
    EXPECT_NEAR(std::abs(s.homopolar), m, 1e-14);
    EXPECT_NEAR(angle_distance_deg(angle_deg(s.homopolar), -109.107), 0.0, 5e-4);
}

TEST(FromSequence, Inverses) {
    const PhasorTriple x = from_sequence({std::sqrt(3.0), 0.0, 0.0});
    const PhasorTriple b = balanced_set();
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(x[k] - b[k]), 1e-15);

    const PhasorTriple h = from_sequence({0.0, 0.0, std::sqrt(3.0)});
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(h[k] - Phasor(1.0)), 1e-15);
}

TEST(FromSequence, Example2SequenceToPhase) {
    // listed V_±e (homopolar at -126.79°, collinear with sum(V_O)) back to V_e
    const SequenceTriple s{from_polar_deg(159.10, -2.73), from_polar_deg(3.79, -20.47),
                           from_polar_deg(2.75, -126.79)};
    const PhasorTriple ve = from_sequence(s);
    const double mag[2] = {93.07, 91.83};
    const double ang[2] = {-3.95, -123.71};
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(std::abs(ve[k]), mag[k], 0.01 * mag[k]);
        EXPECT_NEAR(angle_distance_deg(angle_deg(ve[k]), ang[k]), 0.0, 0.3);
    }
    EXPECT_NEAR(norm(ve), 159.163, 0.005 * 159.163);
}

TEST(FromSequence, RejectsNonFinite) {
    EXPECT_THROW(from_sequence({Phasor(INFINITY, 0.0), 0.0, 0.0}), InvalidInput);
    EXPECT_THROW(to_sequence({Phasor(NAN, 0.0), 0.0, 0.0}), InvalidInput);
}

TEST(CrossTransform, UnitVectorsViaBruteForceExpansion) {
    const PhasorTriple v{1.0, 0.0, 0.0}, i{0.0, 1.0, 0.0};
    EXPECT_LE(cross_transform_check(v, i), 1e-15);

    // both sides built from the trig matrix and Levi-Civita cross product
    const auto a = oracle::fortescue_trig();
    const auto lhs = oracle::levi_civita_cross(oracle::matvec(a, oracle::vec(v)), oracle::matvec(a, oracle::vec(i)));
    const auto rhs0 = oracle::matvec(oracle::conj(a), oracle::levi_civita_cross(oracle::vec(v), oracle::vec(i)));
    const Phasor det = oracle::det_leibniz(a);
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(lhs[k] - det * rhs0[k]), 1e-15);
}

TEST(CrossTransform, Example1SequenceCross) {
    const PhasorTriple v = triple_from_polar_deg({1, 1, 1}, {0, -120, 120});
    PhasorTriple i = triple_from_polar_deg({1, 0.2, 0.8}, {-90, -30, -150});
    i = shifted(i, i.sum() / 3.0); // rho = 1 equivalent current
    EXPECT_LE(cross_transform_check(v, i), 1e-14);

    const PhasorTriple d = cross_unbalance(to_sequence(v).as_triple(), to_sequence(i).as_triple());
    const double s63 = std::sqrt(63.0) / 5.0;
    EXPECT_LT(std::abs(d[0]), 1e-14);
    EXPECT_NEAR(std::abs(d[1]), 2.0 * s63, 1e-13);
    EXPECT_NEAR(angle_distance_deg(angle_deg(d[1]), 70.893), 0.0, 5e-4);
    EXPECT_NEAR(std::abs(d[2]), s63, 1e-13);
}

TEST(SequenceProperties, RandomPairs) {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 2000; ++n) {
        const PhasorTriple v = oracle::random_triple(rng, 1e3);
        const PhasorTriple i = oracle::random_triple(rng, 1e3);
        const double vi = norm(v) * norm(i);
        const PhasorTriple vs = to_sequence(v).as_triple(), is = to_sequence(i).as_triple();

        EXPECT_LE(std::abs(dot_power(vs, is) - dot_power(v, i)), 1e-12 * vi);
        EXPECT_NEAR(norm(cross_unbalance(vs, is)), norm(cross_unbalance(v, i)), 1e-12 * vi);
        EXPECT_NEAR(cvp::cvp(vs, is).s_norm, cvp::cvp(v, i).s_norm, 1e-12 * vi);
        EXPECT_LE(cross_transform_check(v, i), 1e-12 * (vi + 1.0));
        EXPECT_LE(relative_gap_roundtrip(v), 1e-12);
    }
}

TEST(SequenceProperties, ThreeWireBalancedVoltageSplitsPower) {
    std::mt19937_64 rng(29);
    for (int n = 0; n < 200; ++n) {
        const PhasorTriple v = std::polar(100.0, 0.3 * n) * balanced_set();
        const PhasorTriple i = oracle::random_zero_sum(rng, 20.0);
        const SequenceTriple vs = to_sequence(v), is = to_sequence(i);
        EXPECT_LT(std::abs(is.homopolar), 1e-12 * norm(i));
        const Phasor split = vs.plus * std::conj(is.plus) + vs.minus * std::conj(is.minus);
        EXPECT_LE(std::abs(split - dot_power(v, i)), 1e-12 * norm(v) * norm(i));
        // balanced voltage: V_- = V_h = 0, so only the (+, h) and (+, -) cross entries survive
        const PhasorTriple d = cross_unbalance(vs.as_triple(), is.as_triple());
        EXPECT_LT(std::abs(d[0]), 1e-12 * norm(v) * norm(i));
    }
}
