#pragma once

// Response-function layer of the moving oscillator-bath model: retarded
// oscillator Green function, coupling spectrum, Doppler-shifted lab-frame
// susceptibility and the noise spectral density.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

#include "qfric/errors.hpp"
#include "qfric/materials.hpp"
#include "qfric/quantities.hpp"
#include "qfric/thermal.hpp"

namespace qfric {

struct MotionState {
    double v0 = 0.0;     // m/s
    double gamma = 1.0;  // Lorentz factor of v0

    static MotionState at_rest() { return {}; }
    static MotionState moving(Velocity v) { return {v.value(), lorentz_gamma(v)}; }
};

/// Scalar causal susceptibility chi0(omega) along one principal axis, with
/// chi0(-x) = conj(chi0(x)) for negative arguments.
class Susceptibility {
public:
    /// chi0 = eps - 1 of a bulk dielectric model.
    explicit Susceptibility(DielectricModel m) : source_(m) {
        if (m.is_ideal_conductor())
            throw usage_error("Susceptibility: ideal conductor has no finite response");
    }
    /// chi0 = dipole polarizability of a small sphere (units m^3).
    explicit Susceptibility(ParticleModel p) : source_(p) {}

    cplx operator()(double x) const {
        if (!std::isfinite(x)) throw domain_error("susceptibility argument must be finite");
        return std::visit(
            detail::overloaded{
                [&](const DielectricModel& m) -> cplx {
                    const cplx v = detail::contrast(m, std::abs(x));
                    return x < 0.0 ? std::conj(v) : v;
                },
                [&](const ParticleModel& p) -> cplx { return polarizability_signed(p, x); },
            },
            source_);
    }

    /// Im chi0, odd in its argument.
    double im(double x) const {
        if (x == 0.0) return 0.0;
        return (*this)(x).imag();
    }

private:
    std::variant<DielectricModel, ParticleModel> source_;
};

enum class Axis { xx = 0, yy = 1, zz = 2 };

/// Diagonal coupling: one independent scalar channel per axis.
struct ResponseModel {
    std::array<Susceptibility, 3> chi0;

    static ResponseModel isotropic(const Susceptibility& s) { return {{s, s, s}}; }
    const Susceptibility& operator[](Axis a) const { return chi0[static_cast<std::size_t>(a)]; }
};

/// G(tau) = exp(i kx V0 tau) sin(nu tau / gamma) / nu for tau > 0, else 0.
inline cplx oscillator_green_time(double k_x, double nu, double tau, const MotionState& motion) {
    if (!(nu > 0.0)) throw domain_error("oscillator_green_time: nu must be > 0");
    if (tau <= 0.0) return {0.0, 0.0};
    const double phase = k_x * motion.v0 * tau;
    return std::polar(1.0, phase) * (std::sin(nu * tau / motion.gamma) / nu);
}

/// f^2(gamma nu) = (2 nu / (pi eps0)) Im chi0(nu).
inline double coupling_strength_sq(const ResponseModel& model, Axis axis, double nu,
                                   const MotionState& /*motion*/) {
    if (!(nu > 0.0)) throw domain_error("coupling_strength_sq: nu must be > 0");
    const double im = model[axis].im(nu);
    if (im < 0.0) throw passivity_error("coupling_strength_sq: Im chi0 < 0 violates passivity");
    return 2.0 * nu / (std::numbers::pi * kConstants.eps0) * im;
}

/// Lab-frame response chi^ee(omega, kx) = chi0(omega - kx V0).
inline cplx chi_ee_doppler(const ResponseModel& model, Axis axis, double omega, double k_x,
                           const MotionState& motion) {
    return model[axis](omega - k_x * motion.v0);
}

/// Gamma(omega, kx) = 2 Im chi0(kx V0 - omega) a_T(kx V0 - omega) >= 0.
/// The product is taken through im_response_times_coth, so the Doppler
/// zero kx V0 = omega yields its finite limit.
inline double gamma_spectral(const ResponseModel& model, Axis axis, double omega, double k_x,
                             const MotionState& motion, double temperature) {
    if (!(omega > 0.0)) throw domain_error("gamma_spectral: omega must be > 0");
    const Susceptibility& chi = model[axis];
    const double x = k_x * motion.v0 - omega;
    return 2.0 * im_response_times_coth([&](double y) { return chi.im(y); }, temperature, x);
}

}  // namespace qfric
