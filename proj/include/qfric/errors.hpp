#pragma once

#include <stdexcept>
#include <string>

namespace qfric {

/// Argument outside the documented domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation requested on an object that does not support it
/// (e.g. numeric evaluation of the ideal-conductor permittivity).
class usage_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A response function hit a true pole at `location`.
class pole_error : public std::domain_error {
public:
    pole_error(const std::string& what, double location)
        : std::domain_error(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Marker for the coth pole at zero frequency. The pole is integrable once
/// multiplied by an odd response; callers go through the combined routine
/// in thermal.hpp instead of evaluating either factor alone.
class integrable_singularity : public std::domain_error {
public:
    integrable_singularity(const std::string& what, double location)
        : std::domain_error(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Ideal-conductor Im G requested outside the propagating disk.
class sector_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Negative dissipative part of a susceptibility.
class passivity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Integrand returned NaN; `abscissa` is the offending point.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

}  // namespace qfric
