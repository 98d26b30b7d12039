#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qfric/response.hpp"

using namespace qfric;

namespace {

ResponseModel lorentz_model(double wp = 1.0, double w0 = 1.0, double g = 0.5) {
    return ResponseModel::isotropic(Susceptibility(DielectricModel::lorentzian(wp, w0, g)));
}

MotionState moving(double beta) { return MotionState::moving(Velocity::from_beta(beta)); }

}  // namespace

TEST(MotionState, GammaCached) {
    const MotionState m = moving(0.6);
    EXPECT_NEAR(m.gamma, 1.25, 1e-15);
    EXPECT_EQ(MotionState::at_rest().gamma, 1.0);
}

TEST(OscillatorGreen, RetardedAndBounded) {
    const MotionState m = moving(0.3);
    EXPECT_EQ(oscillator_green_time(1.0, 2.0, 0.0, m), cplx(0.0, 0.0));
    EXPECT_EQ(oscillator_green_time(1.0, 2.0, -1.0, m), cplx(0.0, 0.0));
    const MotionState rest = MotionState::at_rest();
    EXPECT_NEAR(std::abs(oscillator_green_time(5.0, 2.0, std::numbers::pi / 2.0, rest)), 0.0, 1e-15);
    for (double tau : {1e-3, 0.1, 1.0, 10.0})
        EXPECT_LE(std::abs(oscillator_green_time(1e-8, 3.0, tau, m)), tau * (1.0 + 1e-15));
    EXPECT_THROW(oscillator_green_time(1.0, 0.0, 1.0, m), domain_error);
}

TEST(OscillatorGreen, PhaseAndDilatedFrequency) {
    const MotionState m = moving(0.2);
    const double kx = 3.0 / m.v0, nu = 1.7, tau = 0.9;
    const cplx g = oscillator_green_time(kx, nu, tau, m);
    const cplx expected = std::polar(1.0, kx * m.v0 * tau) * std::sin(nu * tau / m.gamma) / nu;
    EXPECT_NEAR(std::abs(g - expected), 0.0, 1e-15);
}

TEST(CouplingStrength, LorentzianPeakAndLinearity) {
    const double wp = 1.0, w0 = 1.0, g = 0.5;
    const ResponseModel m = lorentz_model(wp, w0, g);
    const double f2 = coupling_strength_sq(m, Axis::xx, w0, MotionState::at_rest());
    const double expected = 2.0 * w0 / (std::numbers::pi * kConstants.eps0) * (wp * wp / (g * w0));
    EXPECT_NEAR(f2 / expected, 1.0, 1e-14);
    const ResponseModel doubled = lorentz_model(std::sqrt(2.0) * wp, w0, g);
    EXPECT_NEAR(coupling_strength_sq(doubled, Axis::yy, 0.7, MotionState::at_rest()) /
                    coupling_strength_sq(m, Axis::yy, 0.7, MotionState::at_rest()),
                2.0, 1e-13);
    const ResponseModel lossless = ResponseModel::isotropic(Susceptibility(DielectricModel::vacuum()));
    EXPECT_EQ(coupling_strength_sq(lossless, Axis::zz, 2.0, MotionState::at_rest()), 0.0);
    EXPECT_THROW(coupling_strength_sq(m, Axis::xx, 0.0, MotionState::at_rest()), domain_error);
}

TEST(Susceptibility, IdealConductorRejected) {
    EXPECT_THROW(Susceptibility(DielectricModel::ideal_conductor()), usage_error);
}

TEST(ChiEeDoppler, StaticLimitAndShiftInvariance) {
    const ResponseModel m = lorentz_model();
    const MotionState rest = MotionState::at_rest();
    for (double kx : {0.0, 1e-6, 5.0})
        EXPECT_EQ(chi_ee_doppler(m, Axis::xx, 0.8, kx, rest), m[Axis::xx](0.8));

    const MotionState mv = moving(0.2);
    const double delta = 0.37;
    for (double w : {0.3, 1.1})
        for (double kx : {-2.0 / mv.v0, 0.5 / mv.v0}) {
            const cplx a = chi_ee_doppler(m, Axis::xx, w, kx, mv);
            const cplx b = chi_ee_doppler(m, Axis::xx, w + delta, kx + delta / mv.v0, mv);
            EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * std::abs(a));
        }
}

TEST(ChiEeDoppler, DopplerZeroIsStaticSusceptibility) {
    const ResponseModel m = lorentz_model(2.0, 1.0, 0.5);
    const MotionState mv = moving(0.1);
    const cplx chi = chi_ee_doppler(m, Axis::zz, 0.9, 0.9 / mv.v0, mv);
    EXPECT_NEAR(chi.real(), 4.0, 1e-12);
    EXPECT_NEAR(chi.imag(), 0.0, 1e-12);
}

TEST(ChiEeDoppler, NegativeArgumentUsesReality) {
    const ResponseModel m = lorentz_model();
    const MotionState mv = moving(0.2);
    const cplx chi = chi_ee_doppler(m, Axis::xx, 0.5, 1.5 / mv.v0, mv);
    EXPECT_NEAR(std::abs(chi - std::conj(m[Axis::xx](1.0))), 0.0, 1e-12);
    EXPECT_LT(chi.imag(), 0.0);
}

TEST(GammaSpectral, RestAndZeroTemperature) {
    const ResponseModel m = lorentz_model();
    const MotionState rest = MotionState::at_rest();
    const double w = 0.8;
    const double im = m[Axis::xx].im(w);
    EXPECT_DOUBLE_EQ(gamma_spectral(m, Axis::xx, w, 0.0, rest, 0.0), 2.0 * im);
    const double t = kConstants.hbar * w / (2.0 * kConstants.k_B);  // hbar w / 2 k T = 1
    EXPECT_NEAR(gamma_spectral(m, Axis::xx, w, 0.0, rest, t) / (2.0 * im * 1.3130352854993313), 1.0,
                1e-14);
}

TEST(GammaSpectral, FiniteAtDopplerZero) {
    const ResponseModel m = lorentz_model();
    const MotionState mv = moving(0.2);
    const double w = 0.8, t = 1e-11;
    const double g = gamma_spectral(m, Axis::xx, w, w / mv.v0, mv, t);
    EXPECT_TRUE(std::isfinite(g));
    EXPECT_GT(g, 0.0);
}

TEST(GammaSpectral, NonNegativeOnRandomSamples) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ResponseModel m = lorentz_model(1.3, 0.9, 0.4);
    for (int i = 0; i < 10000; ++i) {
        const double beta = 0.9 * (2.0 * u(rng) - 1.0);
        const MotionState mv = beta == 0.0 ? MotionState::at_rest() : moving(beta);
        const double w = 0.01 + 3.0 * u(rng);
        const double kx = (4.0 * u(rng) - 2.0) * w / (std::abs(mv.v0) + 1e-300);
        const double t = 1e-12 * u(rng);
        EXPECT_GE(gamma_spectral(m, Axis::xx, w, kx, mv, t), 0.0);
    }
}
