#pragma once

// Spectral power exchanged between a small particle and the field above an
// ideal mirror, for the particle at rest and moving parallel to the mirror,
// and the friction spectrum defined as their difference.
//
//   S(omega) = P omega^3 int d^2k/(2 pi)^2 2 Im alpha(omega - kx V0)
//              [a_T(omega - kx V0) - a_T0(omega)] [Im D_xx + Im D_yy + Im D_zz]
//
// with P the prefactor of the selected UnitSystem and the Green-function
// imaginary parts carried with their printed (non-positive) sign.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qfric/errors.hpp"
#include "qfric/halfspace_greens.hpp"
#include "qfric/materials.hpp"
#include "qfric/quadrature.hpp"
#include "qfric/quantities.hpp"
#include "qfric/response.hpp"
#include "qfric/thermal.hpp"

namespace qfric {

/// In-plane wave-vector component that carries the Doppler shift. Motion is
/// along x; `y` exists only as a test hook.
enum class DopplerAxis { x, y };

struct SpectrumConfig {
    ParticleModel particle;
    MotionState motion;
    ThermalState thermal;
    Height z;
    std::vector<double> omega_grid;
    QuadratureSpec quad{};
    UnitSystem convention = UnitSystem::PaperGaussianPrefactor;
    DopplerAxis doppler_axis = DopplerAxis::x;
    /// Evaluate Im alpha and a_T as separate factors instead of the combined
    /// pole-safe product. Diagnostics only.
    bool diagnostic_plain_product = false;
    unsigned threads = 1;

    void validate() const {
        quad.validate();
        if (omega_grid.empty()) throw domain_error("omega grid is empty");
        for (std::size_t i = 0; i < omega_grid.size(); ++i) {
            if (!(omega_grid[i] > 0.0) || !std::isfinite(omega_grid[i]))
                throw domain_error("omega grid values must be finite and > 0");
            if (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))
                throw domain_error("omega grid must be strictly increasing");
        }
        if (!(std::abs(motion.v0) < kConstants.c)) throw domain_error("|V0| must be < c");
        if (threads < 1) throw domain_error("threads must be >= 1");
    }
};

enum class GridKind { log, linear };

inline std::vector<double> make_omega_grid(double omega_min, double omega_max, std::size_t points,
                                           GridKind kind) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw domain_error("omega grid needs 0 < omega_min < omega_max");
    if (points < 2) throw domain_error("omega grid needs at least 2 points");
    std::vector<double> grid(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / n;
        grid[i] = kind == GridKind::log
                      ? std::exp(std::log(omega_min) + t * (std::log(omega_max) - std::log(omega_min)))
                      : omega_min + t * (omega_max - omega_min);
    }
    grid.front() = omega_min;
    grid.back() = omega_max;
    return grid;
}

/// Thermally relevant band hbar omega / k_B T_max in [1e-3, 30].
inline std::pair<double, double> default_omega_range(double t_max) {
    if (!(t_max > 0.0)) throw domain_error("default omega range needs a temperature > 0");
    const double scale = kConstants.k_B * t_max / kConstants.hbar;
    return {1e-3 * scale, 30.0 * scale};
}

namespace detail {

inline double doppler_shift(const SpectrumConfig& cfg, double k_x, double k_y) {
    return (cfg.doppler_axis == DopplerAxis::x ? k_x : k_y) * cfg.motion.v0;
}

inline bool inside_coth_pole_window(double temperature, double x) {
    if (temperature == 0.0) return false;
    return std::abs(kConstants.hbar * x / (2.0 * kConstants.k_B * temperature)) < kCothPoleWindow;
}

// 2 Im alpha(x) [a_T(x) - a_T0(omega)].
inline double occupation_weighted_absorption(const SpectrumConfig& cfg, double omega, double x) {
    const double t_p = cfg.thermal.particle.value();
    const double t_e = cfg.thermal.environment.value();
    const double im_alpha = im_polarizability_signed(cfg.particle, x);
    if (cfg.diagnostic_plain_product)
        return 2.0 * im_alpha * (thermal_factor(t_p, x) - thermal_factor(t_e, omega));
    if (x > 0.0 && !inside_coth_pole_window(t_p, x))
        return 2.0 * im_alpha * occupation_difference(cfg.thermal, omega, x);
    return 2.0 * (im_alpha_times_coth(cfg.particle, t_p, x) - im_alpha * thermal_factor(t_e, omega));
}

// B(omega - delta) + B(omega + delta) with B(x) = 2 Im alpha(x) [a_T(x) - a_T0(omega)].
//
// The angular integral keeps only the even part of B in delta, which at
// equilibrium is second order in V0 / c while B itself is first order, so
// the pair is assembled from pieces that carry no cancellation.
inline double paired_absorption(const SpectrumConfig& cfg, double omega, double delta) {
    delta = std::abs(delta);
    if (delta == 0.0) return 2.0 * occupation_weighted_absorption(cfg, omega, omega);
    const double t_p = cfg.thermal.particle.value();
    const double t_e = cfg.thermal.environment.value();
    const double lo = omega - delta;
    const double hi = omega + delta;
    if (cfg.diagnostic_plain_product || !(lo > 0.0) || inside_coth_pole_window(t_p, lo))
        return occupation_weighted_absorption(cfg, omega, lo) +
               occupation_weighted_absorption(cfg, omega, hi);
    if (t_p == 0.0) {
        // a_T = 1 on both sides: B(+) + B(-) = 4 Im-mean (1 - a_T0(omega)).
        const double i_mean = 0.5 * (im_polarizability_signed(cfg.particle, hi) +
                                     im_polarizability_signed(cfg.particle, lo));
        return -8.0 * i_mean * mean_photon_number(t_e, omega);
    }
    // Im alpha(x) = x r(x) with r smooth, and x a_T(x) = g(b x) / b with
    // g(y) = y coth y. With A = b omega, B = b delta the sum becomes
    //   (a_T - a_T0)(omega) (r-mean omega + r-half delta)
    //   + (r-mean g-even + r-half (g-odd - B coth A)) / b,
    // where g-even is second order in delta and is summed directly.
    const ReducedAbsorptionPair r = reduced_absorption_pair(cfg.particle, omega, delta);
    const double r_mean = r.mean;
    const double r_half = r.half;
    const double b = kConstants.hbar / (2.0 * kConstants.k_B * t_p);
    const ThermalFactorSplit g = ycothy_split(b * omega, b * delta);
    const double occupation = 2.0 * (mean_photon_number(t_p, omega) - mean_photon_number(t_e, omega));
    const double odd_rest = g.odd - b * delta / std::tanh(b * omega);
    const double sum = occupation * (r_mean * omega + r_half * delta) +
                       (r_mean * g.even + r_half * odd_rest) / b;
    return 4.0 * sum;
}

}  // namespace detail

/// Integrand of the moving-particle spectrum at one point of the disk.
inline double integrand_point(const SpectrumConfig& cfg, double omega, double k_par, double phi) {
    const double k_x = k_par * std::cos(phi);
    const double k_y = k_par * std::sin(phi);
    const ImGreens d = dyadic_components(im_ideal_conductor(omega, k_par, cfg.z.value()), k_x, k_y);
    const double x = omega - detail::doppler_shift(cfg, k_x, k_y);
    return power_prefactor(cfg.convention) * omega * omega * omega *
           detail::occupation_weighted_absorption(cfg, omega, x) * (d.xx + d.yy + d.zz);
}

/// Moving-particle spectral density: the full disk integral at one omega.
///
/// The Im D trace does not depend on phi, so the integrand is evaluated as
/// the average over the pair of angles whose Doppler shifts are +-delta
/// (phi and pi - phi for motion along k_x), through paired_absorption.
inline QuadratureResult spectral_density(const SpectrumConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw domain_error("spectral_density: omega must be > 0");
    const double z = cfg.z.value();
    PolarDiskOptions opts;
    opts.radial = kLightConeSingularity;
    const double k_max = omega / kConstants.c;
    if (cfg.diagnostic_plain_product) {
        opts.symmetry = cfg.doppler_axis == DopplerAxis::x ? AngularSymmetry::even
                                                           : AngularSymmetry::none;
        return integrate_polar_disk(
            [&](double k_par, double phi) { return integrand_point(cfg, omega, k_par, phi); },
            k_max, cfg.quad, opts);
    }
    // x: pairs (phi, pi - phi), even in phi -> quadrant. y: pairs (phi, -phi).
    opts.symmetry = cfg.doppler_axis == DopplerAxis::x ? AngularSymmetry::quadrant
                                                       : AngularSymmetry::even;
    const double scale = power_prefactor(cfg.convention) * omega * omega * omega;
    return integrate_polar_disk(
        [&](double k_par, double phi) {
            const ImGreens g = im_ideal_conductor(omega, k_par, z);
            const double trace = g.xx + g.yy + g.zz;
            const double along = cfg.doppler_axis == DopplerAxis::x ? std::cos(phi) : std::sin(phi);
            const double delta = k_par * along * cfg.motion.v0;
            return scale * 0.5 * detail::paired_absorption(cfg, omega, delta) * trace;
        },
        k_max, cfg.quad, opts);
}

/// Particle at rest: the occupation bracket leaves the k-integral and the
/// remaining weight is ldos_trace.
inline QuadratureResult static_spectral_density(const SpectrumConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw domain_error("static_spectral_density: omega must be > 0");
    const double factor = power_prefactor(cfg.convention) * omega * omega * omega *
                          detail::occupation_weighted_absorption(cfg, omega, omega);
    QuadratureResult r;
    if (factor == 0.0) {
        r.converged = true;
        return r;
    }
    r = ldos_trace(omega, cfg.z.value(), cfg.quad);
    r.value *= factor;
    r.error_estimate *= std::abs(factor);
    r.abs_integral *= std::abs(factor);
    return r;
}

struct SpectrumRow {
    double omega = 0.0;
    double s_static = 0.0;
    double s_moving = 0.0;
    double s_friction = 0.0;  // always s_moving - s_static
    double err_static = 0.0;
    double err_moving = 0.0;
    bool converged = false;
    std::string failure;  // empty unless the point threw
};

struct GridIntegral {
    double value = 0.0;
    double richardson_error = 0.0;
    double quadrature_error = 0.0;
    double error() const { return richardson_error + quadrature_error; }
};

/// Trapezoidal integral over a (possibly non-uniform) grid. The Richardson
/// estimate compares against the rule on every second node,
/// |T_h - T_2h| / 3. The last node is kept in the coarse rule when the
/// number of intervals is odd.
inline GridIntegral trapezoid_with_richardson(const std::vector<double>& x,
                                              const std::vector<double>& y,
                                              const std::vector<double>& y_err = {}) {
    if (x.size() != y.size() || x.size() < 2)
        throw domain_error("trapezoid: need matching grids with >= 2 points");
    auto trap = [&](const std::vector<std::size_t>& idx) {
        CompensatedSum s;
        for (std::size_t j = 1; j < idx.size(); ++j)
            s.add(0.5 * (x[idx[j]] - x[idx[j - 1]]) * (y[idx[j]] + y[idx[j - 1]]));
        return s.value();
    };
    std::vector<std::size_t> fine(x.size()), coarse;
    for (std::size_t i = 0; i < x.size(); ++i) fine[i] = i;
    for (std::size_t i = 0; i < x.size(); i += 2) coarse.push_back(i);
    if (coarse.back() != x.size() - 1) coarse.push_back(x.size() - 1);

    GridIntegral out;
    out.value = trap(fine);
    out.richardson_error = x.size() >= 3 ? std::abs(out.value - trap(coarse)) / 3.0
                                         : std::numeric_limits<double>::infinity();
    if (!y_err.empty()) {
        CompensatedSum q;
        for (std::size_t i = 1; i < x.size(); ++i)
            q.add(0.5 * (x[i] - x[i - 1]) * (std::abs(y_err[i]) + std::abs(y_err[i - 1])));
        out.quadrature_error = q.value();
    }
    return out;
}

struct SpectrumResult {
    std::vector<SpectrumRow> rows;
    GridIntegral static_total;
    GridIntegral moving_total;
    GridIntegral friction_total;
    std::vector<std::string> warnings;

    bool all_converged() const {
        return std::all_of(rows.begin(), rows.end(),
                           [](const SpectrumRow& r) { return r.converged; });
    }
};

namespace detail {

inline SpectrumRow evaluate_row(const SpectrumConfig& cfg, double omega) {
    SpectrumRow row;
    row.omega = omega;
    try {
        const QuadratureResult st = static_spectral_density(cfg, omega);
        const QuadratureResult mv = spectral_density(cfg, omega);
        row.s_static = st.value;
        row.s_moving = mv.value;
        row.s_friction = row.s_moving - row.s_static;
        row.err_static = st.error_estimate;
        row.err_moving = mv.error_estimate;
        row.converged = st.converged && mv.converged;
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.s_static = row.s_moving = row.s_friction = nan;
        row.err_static = row.err_moving = nan;
        row.converged = false;
        row.failure = e.what();
    }
    return row;
}

inline void edge_weight_warning(const std::vector<double>& omega, const std::vector<double>& s,
                                const char* label, std::vector<std::string>& warnings) {
    double peak = 0.0;
    for (double v : s)
        if (std::isfinite(v)) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    for (std::size_t i : {std::size_t{0}, s.size() - 1})
        if (std::isfinite(s[i]) && std::abs(s[i]) > 1e-6 * peak)
            warnings.push_back(std::string(label) + " at grid edge omega = " +
                               std::to_string(omega[i]) +
                               " exceeds 1e-6 of its peak; the grid may truncate the band");
}

}  // namespace detail

/// Static, moving and friction spectra over the configured grid. Points are
/// independent; with threads > 1 they are distributed over workers and the
/// result is identical to the serial run.
inline SpectrumResult friction_spectrum(const SpectrumConfig& cfg) {
    cfg.validate();
    SpectrumResult out;
    const std::size_t n = cfg.omega_grid.size();
    out.rows.resize(n);

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cfg.threads, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.rows[i] = detail::evaluate_row(cfg, cfg.omega_grid[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                    out.rows[i] = detail::evaluate_row(cfg, cfg.omega_grid[i]);
            });
    }

    if (auto w = dipole_validity_warning(cfg.particle, cfg.omega_grid.back())) out.warnings.push_back(*w);

    std::vector<double> st(n), mv(n), fr(n), est(n), emv(n);
    for (std::size_t i = 0; i < n; ++i) {
        st[i] = out.rows[i].s_static;
        mv[i] = out.rows[i].s_moving;
        fr[i] = out.rows[i].s_friction;
        est[i] = out.rows[i].err_static;
        emv[i] = out.rows[i].err_moving;
    }
    std::vector<double> efr(n);
    for (std::size_t i = 0; i < n; ++i) efr[i] = est[i] + emv[i];
    if (n >= 2) {
        out.static_total = trapezoid_with_richardson(cfg.omega_grid, st, est);
        out.moving_total = trapezoid_with_richardson(cfg.omega_grid, mv, emv);
        out.friction_total = trapezoid_with_richardson(cfg.omega_grid, fr, efr);
    }
    detail::edge_weight_warning(cfg.omega_grid, mv, "S_moving", out.warnings);
    return out;
}

struct TotalPower {
    double value = 0.0;
    double richardson_error = 0.0;
    double quadrature_error = 0.0;
    bool converged = false;
    std::vector<std::string> warnings;
    double error() const { return richardson_error + quadrature_error; }
};

/// omega-integral of the moving-particle spectral density over the grid.
inline TotalPower total_power(const SpectrumConfig& cfg) {
    if (cfg.omega_grid.size() < 2) throw domain_error("total_power: grid needs >= 2 points");
    const SpectrumResult s = friction_spectrum(cfg);
    TotalPower p;
    p.value = s.moving_total.value;
    p.richardson_error = s.moving_total.richardson_error;
    p.quadrature_error = s.moving_total.quadrature_error;
    p.converged = s.all_converged();
    p.warnings = s.warnings;
    return p;
}

/// +1 or -1 such that calibration * S_static > 0 when the environment is
/// hotter than the particle. Fixed reference pair 1 K / 2 K at rest.
inline int sign_calibration(const SpectrumConfig& cfg) {
    SpectrumConfig ref = cfg;
    ref.motion = MotionState::at_rest();
    ref.thermal = {Temperature(1.0), Temperature(2.0)};
    const double omega = 1.5 * kConstants.k_B / kConstants.hbar;
    const QuadratureResult r = static_spectral_density(ref, omega);
    return r.value >= 0.0 ? 1 : -1;
}

}  // namespace qfric
