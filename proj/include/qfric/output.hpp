#pragma once

// CSV and JSON-lines writers. Numbers are printed in shortest round-trip
// form, so identical results give byte-identical files.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfric/config.hpp"
#include "qfric/quantities.hpp"
#include "qfric/spectrum.hpp"
#include "qfric/validate.hpp"

namespace qfric {

/// Column order is a stable contract for downstream plotting.
inline constexpr const char* kSpectrumCsvHeader =
    "omega_rad_s,S_static,S_moving,S_friction,err_static,err_moving,converged";

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// Ordered key/value block appended to every output.
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline Metadata base_metadata(const RunConfig& rc, int sign_calibration) {
    Metadata m;
    for (const auto& [k, v] : rc.echo) m.emplace_back("config." + k, v);
    m.emplace_back("constant.hbar_J_s", format_double(kConstants.hbar));
    m.emplace_back("constant.c_m_s", format_double(kConstants.c));
    m.emplace_back("constant.k_B_J_K", format_double(kConstants.k_B));
    m.emplace_back("constant.eps0_F_m", format_double(kConstants.eps0));
    m.emplace_back("convention", std::string(to_string(rc.spectrum.convention)));
    m.emplace_back("prefactor", format_double(power_prefactor(rc.spectrum.convention)));
    m.emplace_back("sign_calibration", std::to_string(sign_calibration));
    m.emplace_back("sign_dictionary",
                   "sign_calibration * S > 0 means net absorption by the particle; "
                   "S columns are written in the uncalibrated convention");
    return m;
}

inline void add_totals(Metadata& m, const SpectrumResult& s) {
    auto add = [&](const std::string& name, const GridIntegral& g) {
        m.emplace_back("total." + name, format_double(g.value));
        m.emplace_back("total." + name + ".richardson_error", format_double(g.richardson_error));
        m.emplace_back("total." + name + ".quadrature_error", format_double(g.quadrature_error));
    };
    add("static", s.static_total);
    add("moving", s.moving_total);
    add("friction", s.friction_total);
    for (const std::string& w : s.warnings) m.emplace_back("warning", w);
    for (const SpectrumRow& r : s.rows)
        if (!r.failure.empty()) m.emplace_back("failure." + format_double(r.omega), r.failure);
}

inline void write_metadata_comments(std::ostream& os, const Metadata& m) {
    for (const auto& [k, v] : m) os << "# " << k << " = " << v << '\n';
}

inline nlohmann::ordered_json metadata_json(const Metadata& m) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
    for (const auto& [k, v] : m) {
        if (k == "warning") warnings.push_back(v);
        else meta[k] = v;
    }
    if (!warnings.empty()) meta["warnings"] = warnings;
    return {{"metadata", meta}};
}

namespace detail {

inline nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace detail

inline void write_spectrum_csv(std::ostream& os, const SpectrumResult& s, const Metadata& m) {
    os << kSpectrumCsvHeader << '\n';
    for (const SpectrumRow& r : s.rows)
        os << format_double(r.omega) << ',' << format_double(r.s_static) << ','
           << format_double(r.s_moving) << ',' << format_double(r.s_friction) << ','
           << format_double(r.err_static) << ',' << format_double(r.err_moving) << ','
           << (r.converged ? 1 : 0) << '\n';
    write_metadata_comments(os, m);
}

inline void write_spectrum_jsonl(std::ostream& os, const SpectrumResult& s, const Metadata& m) {
    using detail::json_number;
    for (const SpectrumRow& r : s.rows) {
        nlohmann::ordered_json j;
        j["omega_rad_s"] = json_number(r.omega);
        j["S_static"] = json_number(r.s_static);
        j["S_moving"] = json_number(r.s_moving);
        j["S_friction"] = json_number(r.s_friction);
        j["err_static"] = json_number(r.err_static);
        j["err_moving"] = json_number(r.err_moving);
        j["converged"] = r.converged;
        os << j.dump() << '\n';
    }
    os << metadata_json(m).dump() << '\n';
}

inline void write_total_power(std::ostream& os, OutputFormat format, const SpectrumResult& s,
                              const Metadata& m) {
    const std::pair<const char*, const GridIntegral*> rows[] = {
        {"static", &s.static_total}, {"moving", &s.moving_total}, {"friction", &s.friction_total}};
    const bool converged = s.all_converged();
    if (format == OutputFormat::csv) {
        os << "quantity,value,richardson_error,quadrature_error,converged\n";
        for (const auto& [name, g] : rows)
            os << name << ',' << format_double(g->value) << ',' << format_double(g->richardson_error)
               << ',' << format_double(g->quadrature_error) << ',' << (converged ? 1 : 0) << '\n';
        write_metadata_comments(os, m);
        return;
    }
    for (const auto& [name, g] : rows) {
        nlohmann::ordered_json j;
        j["quantity"] = name;
        j["value"] = detail::json_number(g->value);
        j["richardson_error"] = detail::json_number(g->richardson_error);
        j["quadrature_error"] = detail::json_number(g->quadrature_error);
        j["converged"] = converged;
        os << j.dump() << '\n';
    }
    os << metadata_json(m).dump() << '\n';
}

inline void write_checks(std::ostream& os, OutputFormat format, const std::vector<CheckResult>& checks,
                         const Metadata& m) {
    if (format == OutputFormat::csv) {
        os << "check,passed,detail\n";
        for (const CheckResult& c : checks)
            os << c.name << ',' << (c.passed ? 1 : 0) << ',' << c.detail << '\n';
        write_metadata_comments(os, m);
        return;
    }
    for (const CheckResult& c : checks) {
        nlohmann::ordered_json j;
        j["check"] = c.name;
        j["passed"] = c.passed;
        j["detail"] = c.detail;
        os << j.dump() << '\n';
    }
    os << metadata_json(m).dump() << '\n';
}

}  // namespace qfric
