#pragma once

// Built-in invariant suite run by `mode = validate`: equilibrium null,
// static temperature antisymmetry and the factorization oracle, each on the
// configured particle, height and grid.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qfric/response.hpp"
#include "qfric/spectrum.hpp"

namespace qfric {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationTolerances {
    double equilibrium_abs = 1e-30;
    double antisymmetry_rel = 1e-12;
    double factorization_rel = 1e-10;
    std::size_t factorization_points = 5;
};

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// A second temperature different from t, for checks that need T != T0.
inline double distinct_temperature(double t) { return t > 0.0 ? 1.1 * t : 0.1; }

}  // namespace detail

/// V0 = 0 and T = T0 at the particle temperature: both spectra vanish.
inline CheckResult check_equilibrium_null(const SpectrumConfig& base, const ValidationTolerances& tol = {}) {
    SpectrumConfig cfg = base;
    cfg.motion = MotionState::at_rest();
    cfg.thermal.environment = cfg.thermal.particle;
    double worst = 0.0;
    bool ok = true;
    for (double omega : cfg.omega_grid) {
        const QuadratureResult st = static_spectral_density(cfg, omega);
        const QuadratureResult mv = spectral_density(cfg, omega);
        worst = std::max({worst, std::abs(st.value), std::abs(mv.value)});
        ok = ok && st.converged && mv.converged;
    }
    ok = ok && worst <= tol.equilibrium_abs;
    return {"equilibrium_null", ok, "max |S| = " + detail::sci(worst)};
}

/// Swapping particle and environment temperatures flips S_static.
inline CheckResult check_static_antisymmetry(const SpectrumConfig& base,
                                             const ValidationTolerances& tol = {}) {
    SpectrumConfig a = base;
    if (a.thermal.particle.value() == a.thermal.environment.value())
        a.thermal.environment = Temperature(detail::distinct_temperature(a.thermal.particle.value()));
    SpectrumConfig b = a;
    std::swap(b.thermal.particle, b.thermal.environment);
    double worst = 0.0;
    for (double omega : a.omega_grid) {
        const double sa = static_spectral_density(a, omega).value;
        const double sb = static_spectral_density(b, omega).value;
        const double scale = std::max(std::abs(sa), std::abs(sb));
        if (scale > 0.0) worst = std::max(worst, std::abs(sa + sb) / scale);
    }
    return {"static_antisymmetry", worst <= tol.antisymmetry_rel,
            "max relative residual = " + detail::sci(worst)};
}

/// At V0 = 0 the two-dimensional disk integral equals the factorized path.
inline CheckResult check_factorization(const SpectrumConfig& base, const ValidationTolerances& tol = {}) {
    SpectrumConfig cfg = base;
    cfg.motion = MotionState::at_rest();
    if (cfg.thermal.particle.value() == cfg.thermal.environment.value())
        cfg.thermal.environment = Temperature(detail::distinct_temperature(cfg.thermal.particle.value()));
    const std::size_t n = cfg.omega_grid.size();
    const std::size_t m = std::min(tol.factorization_points, n);
    double worst = 0.0;
    bool ok = true;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = m == 1 ? 0 : j * (n - 1) / (m - 1);
        const double omega = cfg.omega_grid[i];
        const QuadratureResult st = static_spectral_density(cfg, omega);
        const QuadratureResult mv = spectral_density(cfg, omega);
        ok = ok && st.converged && mv.converged;
        const double scale = std::abs(st.value);
        if (scale > 0.0) worst = std::max(worst, std::abs(mv.value - st.value) / scale);
        else if (mv.value != 0.0) worst = INFINITY;
    }
    ok = ok && worst <= tol.factorization_rel;
    return {"factorization_oracle", ok, "max relative difference = " + detail::sci(worst)};
}

inline std::vector<CheckResult> run_invariant_suite(const SpectrumConfig& cfg,
                                                    const ValidationTolerances& tol = {}) {
    cfg.validate();
    return {check_equilibrium_null(cfg, tol), check_static_antisymmetry(cfg, tol),
            check_factorization(cfg, tol)};
}

}  // namespace qfric
