#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "qfric/halfspace_greens.hpp"

using namespace qfric;

namespace {

constexpr double kOmega = 1e11;
const double kK = kOmega / kConstants.c;
constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

TEST(Kinematics, Branches) {
    const auto normal = kinematics(kOmega, 0.0, IdealConductor{});
    EXPECT_EQ(normal.k, cplx(kK, 0.0));
    EXPECT_EQ(normal.sector, Sector::Propagating);
    EXPECT_TRUE(normal.ideal_conductor);

    EXPECT_EQ(kinematics(kOmega, kK, IdealConductor{}).k, cplx(0.0, 0.0));

    const auto ev = kinematics(kOmega, 2.0 * kK, IdealConductor{});
    EXPECT_EQ(ev.sector, Sector::Evanescent);
    EXPECT_EQ(ev.k.real(), 0.0);
    EXPECT_NEAR(ev.k.imag() / (std::sqrt(3.0) * kK), 1.0, 1e-15);
}

TEST(Kinematics, MediumWaveDecaysIntoHalfSpace) {
    const auto kin = kinematics(kOmega, 0.5 * kK, cplx(2.0, 3.0));
    // exp(i k1 z) must decay for z -> -infinity: Im k1 <= 0.
    EXPECT_LE(kin.k1.imag(), 0.0);
    EXPECT_THROW(kinematics(0.0, 0.0, IdealConductor{}), domain_error);
    EXPECT_THROW(kinematics(kOmega, -1.0, IdealConductor{}), domain_error);
}

TEST(ScalarGreens, ReflectionlessGivesFreeSpace) {
    const double z = 2e-3;
    for (double f : {0.0, 0.3, 0.8}) {
        const auto kin = kinematics(kOmega, f * kK, cplx(5.0, 1.0));
        const ScalarGreens g = scalar_greens_from_reflection(kin, {0.0, 0.0}, z);
        const ImGreens free = im_free_space(kOmega, f * kK);
        EXPECT_NEAR(g.xx.imag() / free.xx, 1.0, 1e-14);
        EXPECT_NEAR(g.yy.imag() / free.yy, 1.0, 1e-14);
        if (f > 0.0) EXPECT_NEAR(g.zz.imag() / free.zz, 1.0, 1e-14);
    }
}

TEST(ScalarGreens, LargeEpsilonApproachesIdealConductor) {
    const double z = 1.3e-3;
    for (double f : {0.1, 0.5, 0.9}) {
        const auto kin = kinematics(kOmega, f * kK, cplx(1e8, 0.0));
        const ScalarGreens g = scalar_greens(kin, cplx(1e8, 0.0), z);
        const ImGreens ideal = im_ideal_conductor(kOmega, f * kK, z);
        // Relative to the free-space scale: near a standing-wave node the
        // mirror value itself is small.
        const ImGreens free = im_free_space(kOmega, f * kK);
        EXPECT_LT(std::abs(g.xx.imag() - ideal.xx), 1e-3 * std::abs(free.xx));
        EXPECT_LT(std::abs(g.yy.imag() - ideal.yy), 1e-3 * std::abs(free.yy));
        EXPECT_LT(std::abs(g.zz.imag() - ideal.zz), 1e-3 * std::abs(free.zz));
    }
    const auto r = reflection_ratios(kinematics(kOmega, 0.2 * kK, IdealConductor{}), 0.0);
    EXPECT_EQ(r.tm, cplx(-1.0, 0.0));
    EXPECT_EQ(r.te, cplx(1.0, 0.0));
}

TEST(ScalarGreens, EvanescentMirrorTermVanishesFarAway) {
    const auto kin = kinematics(kOmega, 3.0 * kK, cplx(4.0, 0.5));
    const ScalarGreens far = scalar_greens(kin, cplx(4.0, 0.5), 1.0);
    const ScalarGreens bare = scalar_greens_from_reflection(kin, {0.0, 0.0}, 1.0);
    EXPECT_NEAR(std::abs(far.yy - bare.yy), 0.0, 1e-12 * std::abs(bare.yy));
}

TEST(ScalarGreens, LightConePoleThrows) {
    EXPECT_THROW(scalar_greens(kinematics(kOmega, kK, cplx(2.0, 0.0)), cplx(2.0, 0.0), 1e-3), pole_error);
}

TEST(IdealConductor, SignsAndBoundaryValues) {
    for (double f : {0.0, 0.2, 0.7, 0.999}) {
        const ImGreens g = im_ideal_conductor(kOmega, f * kK, 3e-3);
        EXPECT_LE(g.xx, 0.0);
        EXPECT_LE(g.yy, 0.0);
        EXPECT_LE(g.zz, 0.0);
    }
    // Antinode 2kz = pi at normal incidence: Im g_xx = -4 pi k / K^2.
    const double z = std::numbers::pi / (2.0 * kK);
    EXPECT_NEAR(im_ideal_conductor(kOmega, 0.0, z).xx / (-2.0 * two_pi / kK), 1.0, 1e-12);
}

TEST(IdealConductor, NearMirrorLimit) {
    // 2 omega z / c < 1e-3.
    const double z = 0.4e-3 / (2.0 * kK);
    for (double f : {0.05, 0.5, 0.95}) {
        const ImGreens g = im_ideal_conductor(kOmega, f * kK, z);
        const ImGreens free = im_free_space(kOmega, f * kK);
        EXPECT_LT(std::abs(g.xx), 1e-6 * std::abs(free.xx));
        EXPECT_LT(std::abs(g.yy), 1e-6 * std::abs(free.yy));
        EXPECT_NEAR(g.zz / (2.0 * free.zz), 1.0, 1e-4);
    }
}

TEST(IdealConductor, PeriodAverageRecoversFreeSpace) {
    const double k_par = 0.6 * kK;
    const double k = std::sqrt((kK - k_par) * (kK + k_par));
    const double z0 = 500.0 / k;
    const int n = 4096;
    double xx = 0.0, yy = 0.0, zz = 0.0;
    for (int i = 0; i < n; ++i) {
        // One full period of cos 2kz, midpoint samples (exact for a cosine).
        const double z = z0 + (i + 0.5) * std::numbers::pi / (k * n);
        const ImGreens g = im_ideal_conductor(kOmega, k_par, z);
        xx += g.xx / n;
        yy += g.yy / n;
        zz += g.zz / n;
    }
    const ImGreens free = im_free_space(kOmega, k_par);
    EXPECT_NEAR(xx / free.xx, 1.0, 1e-6);
    EXPECT_NEAR(yy / free.yy, 1.0, 1e-6);
    EXPECT_NEAR(zz / free.zz, 1.0, 1e-6);
}

TEST(IdealConductor, Errors) {
    EXPECT_THROW(im_ideal_conductor(kOmega, 1.01 * kK, 1e-3), sector_error);
    EXPECT_THROW(im_ideal_conductor(kOmega, kK, 1e-3), pole_error);
    EXPECT_THROW(im_ideal_conductor(kOmega, 0.5 * kK, 0.0), domain_error);
}

TEST(Dyadic, ProjectionsAndTrace) {
    const ImGreens g{-1.0, -3.0, -7.0};
    const ImGreens aligned = dyadic_components(g, 2.0, 0.0);
    EXPECT_EQ(aligned.xx, g.xx);
    EXPECT_EQ(aligned.yy, g.yy);
    const ImGreens diag = dyadic_components(g, 1.5, 1.5);
    EXPECT_DOUBLE_EQ(diag.xx, 0.5 * (g.xx + g.yy));
    EXPECT_DOUBLE_EQ(diag.yy, 0.5 * (g.xx + g.yy));
    const ImGreens origin = dyadic_components(g, 0.0, 0.0);
    EXPECT_EQ(origin.xx, 0.5 * (g.xx + g.yy));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const ImGreens d = dyadic_components(g, u(rng), u(rng));
        EXPECT_NEAR(d.xx + d.yy + d.zz, g.xx + g.yy + g.zz, 1e-14);
    }
}

TEST(LdosTrace, MatchesClosedForm) {
    const QuadratureSpec spec{};
    for (double x : {1e-3, 0.1, 1.0, 3.0, 10.0, 60.0, 300.0}) {
        const double z = x / (2.0 * kK);
        const QuadratureResult r = ldos_trace(kOmega, z, spec);
        EXPECT_TRUE(r.converged) << "x = " << x;
        const double ref = oracle::mirror_ldos_trace(kOmega, z);
        EXPECT_NEAR(r.value / ref, 1.0, 1e-8) << "x = " << x;
    }
}

TEST(LdosTrace, LimitsNearAndFar) {
    const QuadratureSpec spec{};
    // At the mirror only D_zz survives, doubled: 2/3 of the free-space trace.
    const double near = ldos_trace(kOmega, 1e-6 / kK, spec).value;
    EXPECT_NEAR(near / oracle::free_space_ldos_trace(kOmega), 2.0 / 3.0, 1e-6);
    EXPECT_THROW(ldos_trace(kOmega, 0.0, spec), domain_error);
}
