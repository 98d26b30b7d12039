#pragma once

#include <array>
#include <cmath>

#include "qfric/errors.hpp"
#include "qfric/materials.hpp"
#include "qfric/quantities.hpp"

namespace qfric {

/// Particle temperature T and environment (mirror + field) temperature T0.
struct ThermalState {
    Temperature particle;
    Temperature environment;
};

/// Bose-Einstein occupation 1 / (exp(hbar w / k_B T) - 1); zero at T = 0.
inline double mean_photon_number(double temperature, double omega) {
    if (!(omega > 0.0)) throw domain_error("mean_photon_number: omega must be > 0");
    if (temperature < 0.0) throw domain_error("mean_photon_number: T must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(kConstants.hbar * omega / (kConstants.k_B * temperature));
}

/// coth(hbar x / 2 k_B T), odd in x, sign(x) at T = 0.
/// x = 0 at finite T throws integrable_singularity.
inline double thermal_factor(double temperature, double x) {
    if (temperature < 0.0) throw domain_error("thermal_factor: T must be >= 0");
    if (temperature == 0.0) return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    if (x == 0.0) throw integrable_singularity("thermal_factor: coth pole at x = 0", 0.0);
    const double u = kConstants.hbar * x / (2.0 * kConstants.k_B * temperature);
    return 1.0 / std::tanh(u);
}

/// a_T(omega_doppler) - a_T0(omega).
///
/// For omega_doppler > 0 this is evaluated as 2 [n_T(omega_doppler) -
/// n_T0(omega)]: far in the Wien tail both coth factors round to 1 and their
/// direct difference is pure cancellation noise.
inline double occupation_difference(const ThermalState& s, double omega, double omega_doppler) {
    if (!(omega > 0.0)) throw domain_error("occupation_difference: omega must be > 0");
    if (omega_doppler > 0.0)
        return 2.0 * (mean_photon_number(s.particle.value(), omega_doppler) -
                      mean_photon_number(s.environment.value(), omega));
    return thermal_factor(s.particle.value(), omega_doppler) -
           thermal_factor(s.environment.value(), omega);
}

/// Even and odd parts of a_T about omega for a shift delta:
///   even = (a_T(omega + delta) + a_T(omega - delta)) / 2 - a_T(omega)
///   odd  = (a_T(omega + delta) - a_T(omega - delta)) / 2
struct ThermalFactorSplit {
    double even;
    double odd;
};

namespace detail {

// coth(A + B) and coth(A - B) about coth A for 0 < B < A, from
//   coth(A+B) + coth(A-B) - 2 coth A = 2 coth A sinh^2 B / (sinh(A+B) sinh(A-B))
//   coth(A+B) - coth(A-B) = -sinh 2B / (sinh(A+B) sinh(A-B))
// with the sinh products scaled by exp(-2A) so the Wien tail neither
// overflows nor cancels.
inline ThermalFactorSplit coth_split(double A, double B) {
    // sinh(y) = exp(y) * s(y)
    auto s = [](double y) { return -0.5 * std::expm1(-2.0 * y); };
    const double denom = s(A + B) * s(A - B);
    double sinh2b_scaled, sinhb_sq_scaled;  // sinh(2B) e^{-2A}, sinh(B)^2 e^{-2A}
    if (B < 300.0) {
        const double e = std::exp(-2.0 * A);
        sinh2b_scaled = std::sinh(2.0 * B) * e;
        const double sb = std::sinh(B);
        sinhb_sq_scaled = sb * sb * e;
    } else {
        sinh2b_scaled = 0.5 * std::exp(2.0 * (B - A)) * (-std::expm1(-4.0 * B));
        const double h = 0.5 * std::exp(B - A) * (-std::expm1(-2.0 * B));
        sinhb_sq_scaled = h * h;
    }
    return {sinhb_sq_scaled / (std::tanh(A) * denom), -sinh2b_scaled / (2.0 * denom)};
}

// Taylor coefficients of y coth y = sum_k c_k y^(2k), c_k = 4^k B_2k / (2k)!.
inline constexpr int kYCothTerms = 18;
inline const std::array<double, kYCothTerms>& ycothy_coefficients() {
    static const std::array<double, kYCothTerms> c = [] {
        constexpr double bernoulli[kYCothTerms][2] = {
            {1.0, 1.0},          {1.0, 6.0},
            {-1.0, 30.0},        {1.0, 42.0},
            {-1.0, 30.0},        {5.0, 66.0},
            {-691.0, 2730.0},    {7.0, 6.0},
            {-3617.0, 510.0},    {43867.0, 798.0},
            {-174611.0, 330.0},  {854513.0, 138.0},
            {-236364091.0, 2730.0}, {8553103.0, 6.0},
            {-23749461029.0, 870.0}, {8615841276005.0, 14322.0},
            {-7709321041217.0, 510.0}, {2577687858367.0, 6.0}};
        std::array<double, kYCothTerms> out{};
        double scale = 1.0;  // 4^k / (2k)!
        for (int k = 0; k < kYCothTerms; ++k) {
            if (k > 0) scale *= 4.0 / ((2.0 * k - 1.0) * (2.0 * k));
            out[k] = bernoulli[k][0] / bernoulli[k][1] * scale;
        }
        return out;
    }();
    return c;
}

}  // namespace detail

/// Split for 0 <= |delta| < omega, computed without cancellation.
inline ThermalFactorSplit thermal_factor_split(double temperature, double omega, double delta) {
    if (temperature < 0.0) throw domain_error("thermal_factor_split: T must be >= 0");
    if (!(std::abs(delta) < omega))
        throw domain_error("thermal_factor_split: need |delta| < omega");
    if (temperature == 0.0 || delta == 0.0) return {0.0, 0.0};
    const double b = kConstants.hbar / (2.0 * kConstants.k_B * temperature);
    const ThermalFactorSplit sp = detail::coth_split(b * omega, b * std::abs(delta));
    return {sp.even, delta > 0.0 ? sp.odd : -sp.odd};
}

/// Even and odd parts of g(y) = y coth y about A for a shift B, 0 <= B < A:
///   even = (g(A+B) + g(A-B)) / 2 - g(A),  odd = (g(A+B) - g(A-B)) / 2.
/// Near the origin g is 1 + y^2/3 + ..., so the direct differences lose most
/// digits; there the binomial expansion of the Taylor series is summed, all
/// of whose inner terms have one sign.
inline ThermalFactorSplit ycothy_split(double A, double B) {
    if (!(B >= 0.0 && B < A)) throw domain_error("ycothy_split: need 0 <= B < A");
    if (B == 0.0) return {0.0, 0.0};
    if (A + B > 1.0) {
        const ThermalFactorSplit c = detail::coth_split(A, B);
        return {A * c.even + B * c.odd, A * c.odd + B * (1.0 / std::tanh(A) + c.even)};
    }
    const auto& c = detail::ycothy_coefficients();
    const double a2 = A * A;
    double even = 0.0, odd = 0.0;
    double a_pow = 1.0;  // A^(2k)
    for (int k = 1; k < detail::kYCothTerms; ++k) {
        a_pow *= a2;
        // sum_j C(2k, j) A^(2k-j) B^j split by parity of j, built by ratio
        // so nothing overflows or underflows before the products shrink.
        double term = a_pow;  // j = 0
        double e = 0.0, o = 0.0;
        const int n = 2 * k;
        for (int j = 1; j <= n; ++j) {
            term *= static_cast<double>(n - j + 1) / j * (B / A);
            (j % 2 == 0 ? e : o) += term;
        }
        even += c[k] * e;
        odd += c[k] * o;
    }
    return {even, odd};
}

/// Below this |hbar x / 2 k_B T| the product Im chi(x) coth(.) is taken from
/// its analytic small-argument form.
inline constexpr double kCothPoleWindow = 1e-8;

/// Im chi(x) * coth(hbar x / 2 k_B T) for an odd, causal Im chi.
///
/// Each factor is singular or vanishing at x = 0 but the product is finite:
/// Im chi(x) ~ s x and coth(u) ~ 1/u give s * 2 k_B T / hbar. Inside the pole
/// window the product is assembled as (Im chi(x) / x) * (2 k_B T / hbar) *
/// (u coth u) so no factor is ever evaluated on the pole.
template <class ImOdd>
double im_response_times_coth(ImOdd&& im_odd, double temperature, double x) {
    if (temperature < 0.0) throw domain_error("im_response_times_coth: T must be >= 0");
    if (temperature == 0.0) {
        const double im = im_odd(x);
        return x > 0.0 ? im : (x < 0.0 ? -im : 0.0);
    }
    const double scale = 2.0 * kConstants.k_B * temperature / kConstants.hbar;
    const double u = x / scale;
    if (std::abs(u) < kCothPoleWindow) {
        const double probe = x != 0.0 ? x : kCothPoleWindow * scale;
        const double slope = im_odd(probe) / probe;
        return slope * scale * (1.0 + u * u / 3.0);
    }
    return im_odd(x) / std::tanh(u);
}

inline double im_alpha_times_coth(const ParticleModel& p, double temperature, double x) {
    return im_response_times_coth([&](double y) { return im_polarizability_signed(p, y); },
                                  temperature, x);
}

}  // namespace qfric
