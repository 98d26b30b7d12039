#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qfric/spectrum.hpp"
#include "qfric/validate.hpp"

using namespace qfric;

namespace {

SpectrumConfig make_config(double beta, double tp, double te, std::size_t points = 5) {
    const auto [lo, hi] = default_omega_range(std::max({tp, te, 0.11}));
    return SpectrumConfig{
        ParticleModel(10e-9, DielectricModel::drude_dc(1.6e7)),
        beta == 0.0 ? MotionState::at_rest() : MotionState::moving(Velocity::from_beta(beta)),
        ThermalState{Temperature(tp), Temperature(te)},
        Height(100e-9),
        make_omega_grid(lo, hi, points, GridKind::log),
    };
}

constexpr double kOmega = 2e10;

}  // namespace

TEST(OmegaGrid, EndpointsAndSpacing) {
    const auto g = make_omega_grid(1.0, 100.0, 3, GridKind::log);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_NEAR(g[1], 10.0, 1e-13);
    EXPECT_EQ(g.back(), 100.0);
    const auto l = make_omega_grid(1.0, 3.0, 3, GridKind::linear);
    EXPECT_EQ(l[1], 2.0);
    EXPECT_THROW(make_omega_grid(2.0, 1.0, 3, GridKind::log), domain_error);
    EXPECT_THROW(make_omega_grid(1.0, 2.0, 1, GridKind::log), domain_error);
    const auto [lo, hi] = default_omega_range(1.0);
    EXPECT_NEAR(kConstants.hbar * lo / kConstants.k_B, 1e-3, 1e-15);
    EXPECT_NEAR(kConstants.hbar * hi / kConstants.k_B, 30.0, 1e-12);
}

TEST(Spectrum, EquilibriumNull) {
    const SpectrumConfig cfg = make_config(0.0, 0.11, 0.11);
    for (double w : cfg.omega_grid) {
        EXPECT_LE(std::abs(static_spectral_density(cfg, w).value), 1e-30);
        EXPECT_LE(std::abs(spectral_density(cfg, w).value), 1e-30);
    }
}

TEST(Spectrum, StaticAntisymmetry) {
    const SpectrumConfig a = make_config(1e-3, 0.11, 0.12);
    const SpectrumConfig b = make_config(1e-3, 0.12, 0.11);
    for (double w : a.omega_grid) {
        const double sa = static_spectral_density(a, w).value;
        const double sb = static_spectral_density(b, w).value;
        EXPECT_LE(std::abs(sa + sb), 1e-12 * std::abs(sa));
    }
}

TEST(Spectrum, FactorizationAtRest) {
    const SpectrumConfig cfg = make_config(0.0, 0.11, 0.12);
    for (double w : cfg.omega_grid) {
        const QuadratureResult st = static_spectral_density(cfg, w);
        const QuadratureResult mv = spectral_density(cfg, w);
        EXPECT_TRUE(st.converged && mv.converged);
        EXPECT_NEAR(mv.value / st.value, 1.0, 1e-10);
    }
}

TEST(Spectrum, HotterEnvironmentHeatsParticle) {
    EXPECT_EQ(sign_calibration(make_config(0.0, 0.11, 0.11)), 1);
    EXPECT_GT(static_spectral_density(make_config(0.0, 0.11, 0.12), kOmega).value, 0.0);
    EXPECT_LT(static_spectral_density(make_config(0.0, 0.12, 0.11), kOmega).value, 0.0);
}

TEST(Integrand, PerpendicularWaveVectorHasNoDopplerShift) {
    const SpectrumConfig moving = make_config(0.2, 0.11, 0.12);
    const SpectrumConfig rest = make_config(0.0, 0.11, 0.12);
    const double k = 0.4 * kOmega / kConstants.c;
    const double a = integrand_point(moving, kOmega, k, std::numbers::pi / 2.0);
    const double b = integrand_point(rest, kOmega, k, 0.3);
    EXPECT_NEAR(a / b, 1.0, 1e-12);
}

TEST(Integrand, EvenInAngle) {
    const SpectrumConfig cfg = make_config(0.3, 0.11, 0.12);
    const double k = 0.7 * kOmega / kConstants.c;
    for (double phi : {0.2, 1.0, 2.5}) {
        const double a = integrand_point(cfg, kOmega, k, phi);
        EXPECT_NEAR(integrand_point(cfg, kOmega, k, -phi) / a, 1.0, 1e-13);
    }
}

TEST(Spectrum, TransverseAxisHookMatchesMotionAxis) {
    SpectrumConfig x = make_config(0.1, 0.11, 0.11);
    SpectrumConfig y = x;
    y.doppler_axis = DopplerAxis::y;
    for (double w : {5e9, kOmega, 1e11}) {
        const double sx = spectral_density(x, w).value;
        const double sy = spectral_density(y, w).value;
        EXPECT_NE(sx, 0.0);
        EXPECT_NEAR(sy / sx, 1.0, 1e-7);
    }
}

TEST(Spectrum, PairedEvaluationMatchesPlainProduct) {
    SpectrumConfig paired = make_config(0.3, 0.11, 0.12);
    SpectrumConfig plain = paired;
    plain.diagnostic_plain_product = true;
    for (double w : {3e9, kOmega, 1.5e11}) {
        const double a = spectral_density(paired, w).value;
        const double b = spectral_density(plain, w).value;
        EXPECT_NEAR(a / b, 1.0, 1e-7) << "omega = " << w;
    }
}

TEST(Spectrum, FrictionIsDifferenceAndNonPositiveAtEquilibrium) {
    const SpectrumResult r = friction_spectrum(make_config(1e-3, 0.11, 0.11, 9));
    EXPECT_TRUE(r.all_converged());
    for (const SpectrumRow& row : r.rows) {
        EXPECT_EQ(row.s_friction, row.s_moving - row.s_static);
        EXPECT_EQ(row.s_static, 0.0);
        EXPECT_LE(row.s_friction, 0.0);
    }
    EXPECT_LT(r.friction_total.value, 0.0);
}

TEST(Spectrum, ThreadedRunIsIdentical) {
    SpectrumConfig serial = make_config(1e-2, 0.11, 0.12, 7);
    SpectrumConfig threaded = serial;
    threaded.threads = 3;
    const SpectrumResult a = friction_spectrum(serial);
    const SpectrumResult b = friction_spectrum(threaded);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].s_static, b.rows[i].s_static);
        EXPECT_EQ(a.rows[i].s_moving, b.rows[i].s_moving);
        EXPECT_EQ(a.rows[i].err_moving, b.rows[i].err_moving);
    }
    EXPECT_EQ(a.moving_total.value, b.moving_total.value);
}

TEST(Spectrum, ScaleFreeConventionDropsPrefactor) {
    const SpectrumConfig gaussian = make_config(0.0, 0.11, 0.12);
    SpectrumConfig free = gaussian;
    free.convention = UnitSystem::ScaleFree;
    const double ratio = static_spectral_density(free, kOmega).value /
                         static_spectral_density(gaussian, kOmega).value;
    EXPECT_NEAR(ratio * power_prefactor(UnitSystem::PaperGaussianPrefactor), 1.0, 1e-14);
}

TEST(Trapezoid, RichardsonOnQuadratic) {
    const std::vector<double> x{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> y;
    for (double v : x) y.push_back(v * v);
    const GridIntegral g = trapezoid_with_richardson(x, y, {1e-3, 1e-3, 1e-3, 1e-3, 1e-3});
    EXPECT_DOUBLE_EQ(g.value, 0.34375);
    // Trapezoid error is exactly h^2-proportional for a quadratic.
    EXPECT_NEAR(g.value - g.richardson_error, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(g.quadrature_error, 1e-3, 1e-18);
    EXPECT_THROW(trapezoid_with_richardson({1.0}, {1.0}), domain_error);
}

TEST(Validate, InvariantSuitePasses) {
    for (const CheckResult& c : run_invariant_suite(make_config(1e-3, 0.11, 0.11)))
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Spectrum, ConfigValidation) {
    SpectrumConfig cfg = make_config(1e-3, 0.11, 0.11);
    cfg.omega_grid = {2.0, 1.0};
    EXPECT_THROW(friction_spectrum(cfg), domain_error);
    cfg.omega_grid.clear();
    EXPECT_THROW(friction_spectrum(cfg), domain_error);
}
