#pragma once

// Deterministic globally-adaptive quadrature.
//
// Panels are bisected worst-error-first; the final value is a compensated
// sum over panels taken in left-to-right order, so a given integrand and
// spec always produce bit-identical results. Both base rules are open:
// no abscissa ever lands on a panel endpoint.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qfric/errors.hpp"

namespace qfric {

enum class BaseRule { GaussKronrod15, ClenshawCurtis33 };

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 2000;
    BaseRule base_rule = BaseRule::GaussKronrod15;

    void validate() const {
        if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0))
            throw domain_error("quadrature tolerances must be >= 0");
        if (!(rel_tol > 0.0 || abs_tol > 0.0))
            throw domain_error("quadrature needs rel_tol > 0 or abs_tol > 0");
        if (max_subdivisions < 1) throw domain_error("max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double abs_integral = 0.0;  // integral of |f|, used for error propagation
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Declared power-law behaviour |x - endpoint|^exponent at the interval
/// ends. 0 means regular; exponents must be > -1.
struct EndpointSingularity {
    double lower_exponent = 0.0;
    double upper_exponent = 0.0;
};

/// Neumaier summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

struct PanelEstimate {
    double value;
    double error;
    double abs_value;
};

struct GaussKronrod15Rule {
    static constexpr std::array<double, 8> xgk{
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wgk{
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss 7-point weights on xgk[1], xgk[3], xgk[5], xgk[7].
    static constexpr std::array<double, 4> wg{
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    template <class G>
    static PanelEstimate apply(G& g, double lo, double hi) {
        const double center = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        const double fc = g(center);
        double k = wgk[7] * fc;
        double gauss = wg[3] * fc;
        double kabs = wgk[7] * std::abs(fc);
        for (std::size_t j = 0; j < 7; ++j) {
            const double dx = half * xgk[j];
            const double f1 = g(center - dx);
            const double f2 = g(center + dx);
            k += wgk[j] * (f1 + f2);
            kabs += wgk[j] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
        }
        return {k * half, std::abs((k - gauss) * half), kabs * std::abs(half)};
    }
    static constexpr std::size_t points = 15;
};

// Fejer's second rule: Clenshaw-Curtis nodes cos(k pi / n), k = 1..n-1,
// without the endpoints. n = 34 gives 33 nodes, the n = 17 rule on every
// second node is the embedded error estimator.
struct Fejer2Rule {
    static constexpr int n_fine = 34;
    static constexpr int n_coarse = 17;

    struct Table {
        std::array<double, n_fine - 1> x{};
        std::array<double, n_fine - 1> w_fine{};
        std::array<double, n_coarse - 1> w_coarse{};
    };

    static double weight(int n, int k) {
        const double theta = k * std::numbers::pi / n;
        double s = 0.0;
        for (int j = 1; j <= n / 2; ++j) s += std::sin((2 * j - 1) * theta) / (2 * j - 1);
        return 4.0 * std::sin(theta) / n * s;
    }

    static const Table& table() {
        static const Table t = [] {
            Table tab;
            for (int k = 1; k < n_fine; ++k) {
                tab.x[k - 1] = std::cos(k * std::numbers::pi / n_fine);
                tab.w_fine[k - 1] = weight(n_fine, k);
            }
            for (int k = 1; k < n_coarse; ++k) tab.w_coarse[k - 1] = weight(n_coarse, k);
            return tab;
        }();
        return t;
    }

    template <class G>
    static PanelEstimate apply(G& g, double lo, double hi) {
        const Table& t = table();
        const double center = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double fine = 0.0, coarse = 0.0, fabs_sum = 0.0;
        for (int k = 1; k < n_fine; ++k) {
            const double f = g(center + half * t.x[k - 1]);
            fine += t.w_fine[k - 1] * f;
            fabs_sum += t.w_fine[k - 1] * std::abs(f);
            if (k % 2 == 0) coarse += t.w_coarse[k / 2 - 1] * f;
        }
        return {fine * half, std::abs((fine - coarse) * half), fabs_sum * std::abs(half)};
    }
    static constexpr std::size_t points = n_fine - 1;
};

struct Panel {
    double lo;
    double hi;
    PanelEstimate est;
};

struct WorstFirst {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.est.error != b.est.error) return a.est.error < b.est.error;
        return a.lo > b.lo;
    }
};

template <class Rule, class G>
QuadratureResult adaptive_core(G& g, const std::vector<std::pair<double, double>>& initial,
                               const QuadratureSpec& spec) {
    // Max-heap on the error estimate, kept in a plain vector so the running
    // totals are one linear pass.
    std::vector<Panel> heap;
    std::vector<Panel> done;
    std::size_t evaluations = 0;
    auto push = [&](Panel p) {
        heap.push_back(p);
        std::push_heap(heap.begin(), heap.end(), WorstFirst{});
    };
    for (const auto& [lo, hi] : initial) {
        push({lo, hi, Rule::apply(g, lo, hi)});
        evaluations += Rule::points;
    }

    auto totals = [&](double& value, double& error) {
        CompensatedSum v, e;
        for (const auto* list : {&heap, &done})
            for (const Panel& p : *list) {
                v.add(p.est.value);
                e.add(p.est.error);
            }
        value = v.value();
        error = e.value();
    };

    bool converged = false;
    std::size_t subdivisions = 0;
    for (;;) {
        double value, error;
        totals(value, error);
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
            converged = true;
            break;
        }
        if (subdivisions >= spec.max_subdivisions || heap.empty()) break;
        std::pop_heap(heap.begin(), heap.end(), WorstFirst{});
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Panel cannot be split further in floating point.
            done.push_back(worst);
            continue;
        }
        push({worst.lo, mid, Rule::apply(g, worst.lo, mid)});
        push({mid, worst.hi, Rule::apply(g, mid, worst.hi)});
        evaluations += 2 * Rule::points;
        ++subdivisions;
    }

    std::vector<Panel> all = std::move(done);
    all.insert(all.end(), heap.begin(), heap.end());
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    CompensatedSum v, e, s;
    for (const Panel& p : all) {
        v.add(p.est.value);
        e.add(p.est.error);
        s.add(p.est.abs_value);
    }
    QuadratureResult r;
    r.value = v.value();
    r.error_estimate = e.value();
    r.abs_integral = s.value();
    r.evaluations = evaluations;
    r.converged = converged;
    return r;
}

template <class G>
QuadratureResult dispatch_rule(G& g, const std::vector<std::pair<double, double>>& initial,
                               const QuadratureSpec& spec) {
    if (spec.base_rule == BaseRule::ClenshawCurtis33)
        return adaptive_core<Fejer2Rule>(g, initial, spec);
    return adaptive_core<GaussKronrod15Rule>(g, initial, spec);
}

inline double clamp_open(double x, double a, double b) {
    if (x <= a) return std::nextafter(a, b);
    if (x >= b) return std::nextafter(b, a);
    return x;
}

inline double substitution_power(double exponent) {
    if (!(exponent > -1.0)) throw domain_error("endpoint singularity exponent must be > -1");
    return exponent < 0.0 ? 1.0 / (1.0 + exponent) : 1.0;
}

}  // namespace detail

/// Adaptive integral of f over [a, b].
///
/// Declared endpoint singularities |x - end|^beta are removed by the
/// substitution x - end ~ t^m with m = 1 / (1 + beta), which makes the
/// transformed integrand bounded at the endpoint. NaN from f throws
/// quadrature_error carrying the abscissa; non-convergence is reported
/// through QuadratureResult::converged.
template <class F>
QuadratureResult integrate_adaptive_1d(F&& f, double a, double b, const QuadratureSpec& spec,
                                       EndpointSingularity hint = {}) {
    spec.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw domain_error("integrate_adaptive_1d: need finite a < b");

    auto eval = [&](double x) {
        const double v = f(x);
        if (std::isnan(v))
            throw quadrature_error("integrand returned NaN at x = " + std::to_string(x), x);
        return v;
    };

    const double m_lo = detail::substitution_power(hint.lower_exponent);
    const double m_hi = detail::substitution_power(hint.upper_exponent);
    const bool sing_lo = m_lo != 1.0;
    const bool sing_hi = m_hi != 1.0;

    if (!sing_lo && !sing_hi) {
        auto g = [&](double x) { return eval(x); };
        return detail::dispatch_rule(g, {{a, b}}, spec);
    }
    if (sing_lo && !sing_hi) {
        const double len = b - a;
        auto g = [&](double t) {
            const double x = detail::clamp_open(a + len * std::pow(t, m_lo), a, b);
            return eval(x) * len * m_lo * std::pow(t, m_lo - 1.0);
        };
        return detail::dispatch_rule(g, {{0.0, 1.0}}, spec);
    }
    if (!sing_lo && sing_hi) {
        const double len = b - a;
        auto g = [&](double t) {
            const double s = 1.0 - t;
            const double x = detail::clamp_open(b - len * std::pow(s, m_hi), a, b);
            return eval(x) * len * m_hi * std::pow(s, m_hi - 1.0);
        };
        return detail::dispatch_rule(g, {{0.0, 1.0}}, spec);
    }
    // Both ends: the two substitutions meet at the midpoint, which is also
    // the boundary of the two starting panels.
    const double mid = 0.5 * (a + b);
    const double len_lo = mid - a;
    const double len_hi = b - mid;
    auto g = [&](double t) {
        if (t < 0.5) {
            const double u = 2.0 * t;
            const double x = detail::clamp_open(a + len_lo * std::pow(u, m_lo), a, b);
            return eval(x) * 2.0 * len_lo * m_lo * std::pow(u, m_lo - 1.0);
        }
        const double s = 2.0 * (1.0 - t);
        const double x = detail::clamp_open(b - len_hi * std::pow(s, m_hi), a, b);
        return eval(x) * 2.0 * len_hi * m_hi * std::pow(s, m_hi - 1.0);
    };
    return detail::dispatch_rule(g, {{0.0, 0.5}, {0.5, 1.0}}, spec);
}

enum class AngularSymmetry {
    none,      // integrate phi over [0, 2 pi]
    even,      // f(k, phi) == f(k, -phi): [0, pi], doubled
    quadrant   // additionally f(k, phi) == f(k, pi - phi): [0, pi/2], times 4
};

struct PolarDiskOptions {
    AngularSymmetry symmetry = AngularSymmetry::none;
    EndpointSingularity radial{};
};

/// (1 / (2 pi)^2) * int_0^k_max k dk int_0^{2 pi} dphi f(k, phi).
///
/// The reported error adds the propagated inner (angular) errors to the
/// outer radial estimate.
template <class F>
QuadratureResult integrate_polar_disk(F&& f, double k_max, const QuadratureSpec& spec,
                                      PolarDiskOptions options = {}) {
    spec.validate();
    if (!(k_max > 0.0) || !std::isfinite(k_max))
        throw domain_error("integrate_polar_disk: k_max must be > 0");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double norm = 1.0 / (two_pi * two_pi);
    double phi_max = two_pi, phi_weight = 1.0;
    if (options.symmetry == AngularSymmetry::even) {
        phi_max = std::numbers::pi;
        phi_weight = 2.0;
    } else if (options.symmetry == AngularSymmetry::quadrant) {
        phi_max = 0.5 * std::numbers::pi;
        phi_weight = 4.0;
    }

    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    inner.abs_tol = spec.abs_tol * 0.1 / (norm * 0.5 * k_max * k_max);

    std::size_t inner_evals = 0;
    bool inner_converged = true;
    double inner_rel_max = 0.0;
    double inner_abs_max = 0.0;

    auto radial = [&](double k) {
        const QuadratureResult ang = integrate_adaptive_1d(
            [&](double phi) { return f(k, phi); }, 0.0, phi_max, inner);
        inner_evals += ang.evaluations;
        inner_converged = inner_converged && ang.converged;
        const double val = phi_weight * ang.value;
        const double err = phi_weight * ang.error_estimate;
        inner_abs_max = std::max(inner_abs_max, err);
        if (val != 0.0) inner_rel_max = std::max(inner_rel_max, err / std::abs(val));
        else if (err > 0.0) inner_rel_max = INFINITY;
        return norm * k * val;
    };

    QuadratureResult outer = integrate_adaptive_1d(radial, 0.0, k_max, spec, options.radial);
    const double inner_contrib = std::min(inner_rel_max * outer.abs_integral,
                                          inner_abs_max * norm * 0.5 * k_max * k_max);
    outer.error_estimate += inner_contrib;
    outer.evaluations += inner_evals;
    outer.converged =
        outer.converged && inner_converged &&
        outer.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(outer.value));
    return outer;
}

/// (1 / 2 pi) * int_0^k_max k f(k) dk: the polar-disk measure for an
/// integrand with no angular dependence.
template <class F>
QuadratureResult integrate_disk_isotropic(F&& f, double k_max, const QuadratureSpec& spec,
                                          EndpointSingularity radial = {}) {
    const double norm = 1.0 / (2.0 * std::numbers::pi);
    return integrate_adaptive_1d([&](double k) { return norm * k * f(k); }, 0.0, k_max, spec,
                                 radial);
}

}  // namespace qfric
