#pragma once

// Physical constants, the unit-convention switch and validated scalar
// quantities shared by every other header.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qfric/errors.hpp"

namespace qfric {

/// CODATA 2018 values, SI.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;   // J s
    double c = 299792458.0;          // m/s
    double k_B = 1.380649e-23;       // J/K
    double eps0 = 8.8541878128e-12;  // F/m
};

inline constexpr PhysicalConstants kConstants{};

/// The half-space Green functions are written in Gaussian form (2 pi i
/// prefactors) while every input is SI, so the absolute scale of the power
/// spectrum carries one unresolved constant. It is folded into a single
/// global prefactor selected here and echoed in all output metadata.
enum class UnitSystem {
    PaperGaussianPrefactor,  // hbar / (2 pi c^2), as printed
    ScaleFree                // 1; spectra in units of the above
};

inline double power_prefactor(UnitSystem u) {
    switch (u) {
        case UnitSystem::PaperGaussianPrefactor:
            return kConstants.hbar / (2.0 * std::numbers::pi * kConstants.c * kConstants.c);
        case UnitSystem::ScaleFree:
            return 1.0;
    }
    return 1.0;
}

inline std::string_view to_string(UnitSystem u) {
    return u == UnitSystem::PaperGaussianPrefactor ? "gaussian" : "scale-free";
}

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw domain_error(std::string(name) + " must be finite");
}

}  // namespace detail

/// Angular frequency in rad/s; spectra only use positive values.
class Frequency {
public:
    explicit Frequency(double rad_per_s) : v_(rad_per_s) {
        detail::require_finite(v_, "frequency");
        if (v_ <= 0.0) throw domain_error("frequency must be > 0 rad/s, got " + std::to_string(v_));
    }
    double value() const noexcept { return v_; }

private:
    double v_;
};

/// Lateral particle velocity in m/s, |V0| < c.
class Velocity {
public:
    explicit Velocity(double m_per_s) : v_(m_per_s) {
        detail::require_finite(v_, "velocity");
        if (std::abs(v_) >= kConstants.c)
            throw domain_error("|V0| must be below the speed of light, got " + std::to_string(v_) +
                               " m/s");
    }
    static Velocity from_beta(double v_over_c) { return Velocity(v_over_c * kConstants.c); }
    double value() const noexcept { return v_; }
    double beta() const noexcept { return v_ / kConstants.c; }

private:
    double v_;
};

/// Height of the particle above the mirror in m, > 0.
class Height {
public:
    explicit Height(double m) : v_(m) {
        detail::require_finite(v_, "height");
        if (v_ <= 0.0) throw domain_error("height must be > 0 m, got " + std::to_string(v_));
    }
    double value() const noexcept { return v_; }

private:
    double v_;
};

/// Absolute temperature in K, >= 0.
class Temperature {
public:
    explicit Temperature(double kelvin) : v_(kelvin) {
        detail::require_finite(v_, "temperature");
        if (v_ < 0.0) throw domain_error("temperature must be >= 0 K, got " + std::to_string(v_));
    }
    double value() const noexcept { return v_; }

private:
    double v_;
};

inline double lorentz_gamma(double v0) {
    const double beta = v0 / kConstants.c;
    if (!(std::abs(beta) < 1.0))
        throw domain_error("lorentz_gamma: |V0| must be < c");
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

inline double lorentz_gamma(Velocity v) { return lorentz_gamma(v.value()); }

}  // namespace qfric
