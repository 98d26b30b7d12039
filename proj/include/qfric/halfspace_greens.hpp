#pragma once

// Green functions above a planar half-space z <= 0, at coincident points
// z = z' > 0, in the lateral-Fourier representation.
//
// Expressions keep the Gaussian-form 2 pi i prefactors and the signs exactly
// as derived for this geometry; the ideal-conductor imaginary parts are <= 0.
// The real contact term 4 pi c^2 / omega^2 delta(z - z') in g_zz never
// contributes to an imaginary part and is omitted.

#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

#include "qfric/errors.hpp"
#include "qfric/materials.hpp"
#include "qfric/quadrature.hpp"
#include "qfric/quantities.hpp"

namespace qfric {

enum class Sector { Propagating, Evanescent };

struct HalfSpaceKinematics {
    double omega;
    double k_par;
    cplx k;                    // vacuum normal wavenumber, Im k >= 0
    cplx k1;                   // medium normal wavenumber; unset for the ideal conductor
    bool ideal_conductor;      // k1 -> infinity, only reflection limits are used
    Sector sector;
};

using HalfSpaceMedium = std::variant<cplx, IdealConductor>;

namespace detail {

// sqrt(K^2 - k_par^2) on the physical branch, computed in factored form so
// the light-cone neighbourhood keeps full relative precision.
inline cplx normal_wavenumber(double K, double k_par) {
    if (k_par <= K) return {std::sqrt((K - k_par) * (K + k_par)), 0.0};
    return {0.0, std::sqrt((k_par - K) * (k_par + K))};
}

}  // namespace detail

inline HalfSpaceKinematics kinematics(double omega, double k_par, const HalfSpaceMedium& medium) {
    if (!(omega > 0.0)) throw domain_error("kinematics: omega must be > 0");
    if (!(k_par >= 0.0)) throw domain_error("kinematics: k_par must be >= 0");
    const double K = omega / kConstants.c;
    HalfSpaceKinematics kin{};
    kin.omega = omega;
    kin.k_par = k_par;
    kin.k = detail::normal_wavenumber(K, k_par);
    kin.sector = k_par <= K ? Sector::Propagating : Sector::Evanescent;
    if (const cplx* eps = std::get_if<cplx>(&medium)) {
        // Principal root has Im >= 0, so k1 = -sqrt(.) makes the transmitted
        // wave exp(i k1 z) decay towards z -> -infinity.
        kin.k1 = -std::sqrt(*eps * K * K - k_par * k_par);
        kin.ideal_conductor = false;
    } else {
        kin.k1 = {INFINITY, 0.0};
        kin.ideal_conductor = true;
    }
    return kin;
}

/// TM- and TE-like reflection ratios (k1 + eps k)/(k1 - eps k) and
/// (k1 + k)/(k1 - k). The ideal conductor gives -1 and +1.
struct ReflectionRatios {
    cplx tm;
    cplx te;
};

inline ReflectionRatios reflection_ratios(const HalfSpaceKinematics& kin, cplx eps) {
    if (kin.ideal_conductor) return {-1.0, 1.0};
    return {(kin.k1 + eps * kin.k) / (kin.k1 - eps * kin.k), (kin.k1 + kin.k) / (kin.k1 - kin.k)};
}

template <class T>
struct GreenTriple {
    T xx;
    T yy;
    T zz;
};

using ScalarGreens = GreenTriple<cplx>;
using ImGreens = GreenTriple<double>;

/// Scalar Green components at z = z' for given reflection ratios.
inline ScalarGreens scalar_greens_from_reflection(const HalfSpaceKinematics& kin,
                                                  ReflectionRatios r, double z) {
    if (!(z > 0.0)) throw domain_error("scalar_greens: z must be > 0");
    if (kin.k == cplx(0.0, 0.0))
        throw pole_error("scalar_greens: g_yy pole on the light cone k = 0", kin.k_par);
    constexpr cplx i{0.0, 1.0};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double inv_K2 = kConstants.c * kConstants.c / (kin.omega * kin.omega);
    const cplx mirror = std::exp(2.0 * i * kin.k * z);
    ScalarGreens g;
    g.xx = -two_pi * i * kin.k * inv_K2 * (r.tm * mirror + 1.0);
    g.yy = two_pi * i / kin.k * (r.te * mirror - 1.0);
    g.zz = two_pi * i * kin.k_par * kin.k_par * inv_K2 / kin.k * (r.tm * mirror - 1.0);
    return g;
}

inline ScalarGreens scalar_greens(const HalfSpaceKinematics& kin, cplx eps, double z) {
    return scalar_greens_from_reflection(kin, reflection_ratios(kin, eps), z);
}

/// Im g at z = z' above an ideal conductor, propagating sector only.
inline ImGreens im_ideal_conductor(double omega, double k_par, double z) {
    if (!(omega > 0.0)) throw domain_error("im_ideal_conductor: omega must be > 0");
    if (!(z > 0.0)) throw domain_error("im_ideal_conductor: z must be > 0");
    if (!(k_par >= 0.0)) throw domain_error("im_ideal_conductor: k_par must be >= 0");
    const double K = omega / kConstants.c;
    if (k_par > K)
        throw sector_error(
            "im_ideal_conductor: evanescent k_par > omega/c; the lossless mirror has no "
            "imaginary part there");
    const double k = std::sqrt((K - k_par) * (K + k_par));
    if (k == 0.0) throw pole_error("im_ideal_conductor: g_zz pole on the light cone", k_par);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double s = std::sin(k * z);
    const double c = std::cos(k * z);
    const double one_minus_cos = 2.0 * s * s;  // 1 - cos 2kz
    const double one_plus_cos = 2.0 * c * c;   // 1 + cos 2kz
    ImGreens g;
    g.xx = -two_pi * k / (K * K) * one_minus_cos;
    g.yy = -two_pi / k * one_minus_cos;
    g.zz = -two_pi * k_par * k_par / (k * K * K) * one_plus_cos;
    return g;
}

/// Im of the direct (mirror-free) terms, the free-space reference.
inline ImGreens im_free_space(double omega, double k_par) {
    const double K = omega / kConstants.c;
    if (!(k_par >= 0.0 && k_par < K))
        throw sector_error("im_free_space: need 0 <= k_par < omega/c");
    const double k = std::sqrt((K - k_par) * (K + k_par));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return {-two_pi * k / (K * K), -two_pi / k, -two_pi * k_par * k_par / (k * K * K)};
}

/// Projection onto (k_x, k_y): D_xx = (kx^2 g_xx + ky^2 g_yy)/k_par^2,
/// D_yy = (ky^2 g_xx + kx^2 g_yy)/k_par^2, D_zz = g_zz. At k_par = 0 both
/// weights are 1/2.
template <class T>
GreenTriple<T> dyadic_components(const GreenTriple<T>& g, double k_x, double k_y) {
    const double kp2 = k_x * k_x + k_y * k_y;
    double wx = 0.5, wy = 0.5;
    if (kp2 > 0.0) {
        wx = k_x * k_x / kp2;
        wy = k_y * k_y / kp2;
    }
    return {wx * g.xx + wy * g.yy, wy * g.xx + wx * g.yy, g.zz};
}

/// Im of the 1/sqrt behaviour of g_yy, g_zz at the light cone, declared to
/// the radial quadrature.
inline constexpr EndpointSingularity kLightConeSingularity{0.0, -0.5};

/// int d^2k_par / (2 pi)^2 [Im D_xx + Im D_yy + Im D_zz] over the propagating
/// disk above the ideal conductor.
inline QuadratureResult ldos_trace(double omega, double z, const QuadratureSpec& spec) {
    if (!(omega > 0.0)) throw domain_error("ldos_trace: omega must be > 0");
    if (!(z > 0.0)) throw domain_error("ldos_trace: z must be > 0");
    const double K = omega / kConstants.c;
    auto trace = [&](double k_par) {
        // The trace is invariant under the in-plane projection, so any
        // direction of k_par gives the same sum.
        const ImGreens d = dyadic_components(im_ideal_conductor(omega, k_par, z), k_par, 0.0);
        return d.xx + d.yy + d.zz;
    };
    return integrate_disk_isotropic(trace, K, spec, kLightConeSingularity);
}

}  // namespace qfric
