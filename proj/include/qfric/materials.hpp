#pragma once

// Dielectric models and the small-sphere dipole polarizability.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "qfric/errors.hpp"
#include "qfric/quantities.hpp"

namespace qfric {

using cplx = std::complex<double>;

/// Lossy conductor characterised by its DC conductivity:
/// eps = 1 + i sigma0 / (eps0 omega).
struct DrudeDC {
    double sigma0;  // S/m
};

/// eps -> infinity. Only meaningful inside the mirror limit of the
/// half-space Green functions; never evaluated as a number.
struct IdealConductor {};

/// eps = 1 + wp^2 / (w0^2 - w^2 - i gamma w).
struct Lorentzian {
    double omega_p;
    double omega_0;
    double damping;
};

/// eps = 1 identically; a particle without contrast.
struct Vacuum {};

class DielectricModel {
public:
    using Kind = std::variant<DrudeDC, IdealConductor, Lorentzian, Vacuum>;

    static DielectricModel drude_dc(double sigma0) {
        if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
            throw domain_error("DrudeDC: sigma0 must be > 0 S/m");
        return DielectricModel(DrudeDC{sigma0});
    }
    static DielectricModel ideal_conductor() { return DielectricModel(IdealConductor{}); }
    static DielectricModel lorentzian(double omega_p, double omega_0, double damping) {
        for (double v : {omega_p, omega_0, damping})
            if (!(v > 0.0) || !std::isfinite(v))
                throw domain_error("Lorentzian: omega_p, omega_0 and damping must be > 0");
        return DielectricModel(Lorentzian{omega_p, omega_0, damping});
    }
    static DielectricModel vacuum() { return DielectricModel(Vacuum{}); }

    const Kind& kind() const noexcept { return kind_; }
    bool is_ideal_conductor() const noexcept {
        return std::holds_alternative<IdealConductor>(kind_);
    }

private:
    explicit DielectricModel(Kind k) : kind_(k) {}
    Kind kind_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// eps - 1 for omega >= 0. Working with the contrast keeps full precision
// when |eps| is huge (sigma0 / (eps0 omega) ~ 1e8 at the frequencies of
// interest).
inline cplx contrast(const DielectricModel& m, double omega) {
    return std::visit(
        overloaded{
            [&](const DrudeDC& d) -> cplx {
                if (omega == 0.0) throw pole_error("DrudeDC permittivity diverges at omega = 0", 0.0);
                return {0.0, d.sigma0 / (kConstants.eps0 * omega)};
            },
            [&](const IdealConductor&) -> cplx {
                throw usage_error(
                    "IdealConductor permittivity is symbolic; use the mirror-limit Green functions");
            },
            [&](const Lorentzian& l) -> cplx {
                return l.omega_p * l.omega_p /
                       cplx(l.omega_0 * l.omega_0 - omega * omega, -l.damping * omega);
            },
            [&](const Vacuum&) -> cplx { return {0.0, 0.0}; },
        },
        m.kind());
}

}  // namespace detail

inline cplx epsilon(const DielectricModel& m, double omega) {
    if (!(omega > 0.0)) throw domain_error("epsilon: omega must be > 0");
    return 1.0 + detail::contrast(m, omega);
}

struct ParticleModel {
    double radius;  // m
    DielectricModel dielectric;

    ParticleModel(double a, DielectricModel d) : radius(a), dielectric(d) {
        if (!(a > 0.0) || !std::isfinite(a)) throw domain_error("particle radius must be > 0 m");
    }

    /// a omega / c, the expansion parameter of the dipole approximation.
    double size_parameter(double omega) const { return radius * omega / kConstants.c; }
};

/// Returns a warning when a omega_max / c exceeds 0.1.
inline std::optional<std::string> dipole_validity_warning(const ParticleModel& p,
                                                          double omega_max) {
    const double x = p.size_parameter(omega_max);
    if (x > 0.1)
        return "dipole approximation questionable: a*omega/c = " + std::to_string(x) +
               " at omega = " + std::to_string(omega_max) + " rad/s";
    return std::nullopt;
}

namespace detail {

// alpha for omega >= 0, with the omega = 0 conductor limit alpha -> a^3.
inline cplx polarizability_nonneg(const ParticleModel& p, double omega) {
    const double a3 = p.radius * p.radius * p.radius;
    if (omega == 0.0 && std::holds_alternative<DrudeDC>(p.dielectric.kind())) return a3;
    const cplx chi = contrast(p.dielectric, omega);
    const cplx denom = chi + 3.0;
    if (denom == cplx(0.0, 0.0))
        throw pole_error("polarizability: Froehlich pole eps = -2 at omega = " +
                             std::to_string(omega),
                         omega);
    return a3 * chi / denom;
}

}  // namespace detail

/// a^3 (eps - 1) / (eps + 2).
inline cplx polarizability(const ParticleModel& p, double omega) {
    if (!(omega > 0.0)) throw domain_error("polarizability: omega must be > 0");
    return detail::polarizability_nonneg(p, omega);
}

/// alpha at any real argument via alpha(-x) = conj(alpha(x)).
inline cplx polarizability_signed(const ParticleModel& p, double x) {
    if (!std::isfinite(x)) throw domain_error("polarizability_signed: argument must be finite");
    const cplx v = detail::polarizability_nonneg(p, std::abs(x));
    return x < 0.0 ? std::conj(v) : v;
}

/// Odd extension of Im alpha to negative (Doppler-shifted) arguments.
inline double im_polarizability_signed(const ParticleModel& p, double x) {
    if (!std::isfinite(x)) throw domain_error("im_polarizability_signed: argument must be finite");
    if (x == 0.0) return 0.0;
    const double im = detail::polarizability_nonneg(p, std::abs(x)).imag();
    return x > 0.0 ? im : -im;
}

/// Mean and half-difference of r(x) = Im alpha(x) / x over x = omega +- delta.
struct ReducedAbsorptionPair {
    double mean;
    double half;
};

/// For 0 <= delta < omega. r is a rational function of x^2 for every model,
/// so the half-difference is formed with the factor omega delta taken out
/// and stays exact however small delta / omega is.
inline ReducedAbsorptionPair reduced_absorption_pair(const ParticleModel& p, double omega,
                                                     double delta) {
    if (!(delta >= 0.0 && delta < omega))
        throw domain_error("reduced_absorption_pair: need 0 <= delta < omega");
    const double a3 = p.radius * p.radius * p.radius;
    const double hi = omega + delta;
    const double lo = omega - delta;
    return std::visit(
        detail::overloaded{
            [&](const DrudeDC& d) -> ReducedAbsorptionPair {
                // r = 3 a^3 S / (9 x^2 + S^2), S = sigma0 / eps0
                const double S = d.sigma0 / kConstants.eps0;
                const double q_hi = 9.0 * hi * hi + S * S;
                const double q_lo = 9.0 * lo * lo + S * S;
                const double k = 3.0 * a3 * S;
                return {0.5 * k * (1.0 / q_hi + 1.0 / q_lo),
                        -18.0 * k * omega * delta / (q_hi * q_lo)};
            },
            [&](const IdealConductor&) -> ReducedAbsorptionPair {
                throw usage_error("IdealConductor particle has no finite polarizability");
            },
            [&](const Lorentzian& l) -> ReducedAbsorptionPair {
                // r = (wp^2 g / 3) / ((W^2 - x^2)^2 + g^2 x^2), W^2 = w0^2 + wp^2 / 3
                const double w2 = l.omega_0 * l.omega_0 + l.omega_p * l.omega_p / 3.0;
                const double g = l.damping;
                auto q = [&](double x) {
                    const double t = w2 - x * x;
                    return t * t + g * g * x * x;
                };
                const double q_hi = q(hi);
                const double q_lo = q(lo);
                if (q_hi == 0.0 || q_lo == 0.0)
                    throw pole_error("polarizability: undamped Froehlich pole", std::sqrt(w2));
                const double k = a3 * l.omega_p * l.omega_p * g / 3.0;
                const double spread = g * g - 2.0 * (w2 - omega * omega - delta * delta);
                return {0.5 * k * (1.0 / q_hi + 1.0 / q_lo),
                        -2.0 * k * omega * delta * spread / (q_hi * q_lo)};
            },
            [&](const Vacuum&) -> ReducedAbsorptionPair { return {0.0, 0.0}; },
        },
        p.dielectric.kind());
}

}  // namespace qfric
