#pragma once

// Run configuration: a flat `key = value` text format with command-line
// overrides, resolved into a validated SpectrumConfig plus run options.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qfric/materials.hpp"
#include "qfric/quantities.hpp"
#include "qfric/response.hpp"
#include "qfric/spectrum.hpp"
#include "qfric/thermal.hpp"

namespace qfric {

/// Invalid, missing or unknown configuration entry. `key` names the entry.
class config_error : public std::runtime_error {
public:
    config_error(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class RunMode { spectrum, total_power, validate };
enum class OutputFormat { csv, jsonl };

struct RunConfig {
    SpectrumConfig spectrum;
    RunMode mode = RunMode::spectrum;
    OutputFormat format = OutputFormat::csv;
    std::string output_path = "-";  // "-" is stdout
    bool wall_time = false;
    /// Every key with its resolved value, in canonical order; enough to
    /// reproduce the run.
    std::vector<std::pair<std::string, std::string>> echo;
};

struct ConfigKey {
    std::string_view name;
    std::string_view domain;
};

inline constexpr std::array<ConfigKey, 26> kConfigKeys{{
    {"radius_nm", "particle radius in nm, > 0"},
    {"material", "drude | lorentzian"},
    {"sigma0", "DC conductivity in S/m, > 0 (material = drude)"},
    {"lorentz_omega_p", "plasma frequency in rad/s, > 0 (material = lorentzian)"},
    {"lorentz_omega_0", "resonance frequency in rad/s, > 0 (material = lorentzian)"},
    {"lorentz_gamma", "damping in rad/s, > 0 (material = lorentzian)"},
    {"T_particle", "particle temperature in K, >= 0"},
    {"T_env", "mirror and field temperature in K, >= 0"},
    {"z_nm", "height above the mirror in nm, > 0"},
    {"V0_over_c", "lateral velocity over c, |V0/c| < 1"},
    {"omega_min", "lowest grid frequency in rad/s, > 0"},
    {"omega_max", "highest grid frequency in rad/s, > omega_min"},
    {"omega_points", "number of grid points, >= 2"},
    {"grid", "log | linear"},
    {"rel_tol", "relative quadrature tolerance, >= 0 (rel_tol or abs_tol > 0)"},
    {"abs_tol", "absolute quadrature tolerance, >= 0"},
    {"max_subdivisions", "panel budget per adaptive integral, >= 1"},
    {"base_rule", "gk15 | cc33"},
    {"mode", "spectrum | total-power | validate"},
    {"output", "output path, - for stdout"},
    {"format", "csv | jsonl"},
    {"convention", "gaussian | scale-free"},
    {"threads", "worker threads, >= 1"},
    {"wall_time", "true | false"},
    {"diagnostic_plain_product", "true | false"},
    {"doppler_axis", "x | y (test hook)"},
}};

inline const ConfigKey* find_config_key(std::string_view name) {
    for (const ConfigKey& k : kConfigKeys)
        if (k.name == name) return &k;
    return nullptr;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits `key = value`; throws config_error naming `where` on malformed text.
inline std::pair<std::string, std::string> split_assignment(std::string_view line,
                                                           const std::string& where) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw config_error("", where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw config_error("", where + ": empty key");
    if (!find_config_key(key)) throw config_error(key, "unknown key (" + where + ")");
    if (value.empty()) throw config_error(key, "empty value (" + where + ")");
    return {key, value};
}

inline std::string expected(std::string_view key) {
    const ConfigKey* k = find_config_key(key);
    return k ? "expected " + std::string(k->domain) : "invalid value";
}

}  // namespace detail

/// Raw key/value entries, before resolution.
using ConfigEntries = std::map<std::string, std::string>;

/// Parses config file text. Blank lines and `#` comments are ignored;
/// duplicate and unknown keys are errors.
inline ConfigEntries parse_config_text(std::string_view text) {
    ConfigEntries out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto [key, value] = detail::split_assignment(line, "line " + std::to_string(line_no));
        if (out.count(key)) throw config_error(key, "duplicate key on line " + std::to_string(line_no));
        out.emplace(std::move(key), std::move(value));
    }
    return out;
}

/// Applies `key=value` overrides; they win over the file.
inline void apply_overrides(ConfigEntries& entries, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
        auto [key, value] = detail::split_assignment(o, "--set " + o);
        entries[key] = value;
    }
}

namespace detail {

class EntryReader {
public:
    explicit EntryReader(const ConfigEntries& e) : e_(e) {}

    bool has(const std::string& key) const { return e_.count(key) > 0; }

    std::string text(const std::string& key, std::string fallback) const {
        auto it = e_.find(key);
        return it == e_.end() ? fallback : it->second;
    }

    double number(const std::string& key) const {
        auto it = e_.find(key);
        if (it == e_.end()) throw config_error(key, "missing required key; " + expected(key));
        return parse_number(key, it->second);
    }

    double number(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    std::size_t count(const std::string& key, std::size_t fallback, std::size_t min) const {
        auto it = e_.find(key);
        if (it == e_.end()) return fallback;
        const std::string& s = it->second;
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < min)
            throw config_error(key, "'" + s + "' is invalid; " + expected(key));
        return v;
    }

    template <class T>
    T choice(const std::string& key, const std::vector<std::pair<std::string, T>>& options,
             T fallback) const {
        auto it = e_.find(key);
        if (it == e_.end()) return fallback;
        for (const auto& [name, value] : options)
            if (name == it->second) return value;
        throw config_error(key, "'" + it->second + "' is invalid; " + expected(key));
    }

private:
    static double parse_number(const std::string& key, const std::string& s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
            throw config_error(key, "'" + s + "' is not a finite number; " + expected(key));
        return v;
    }

    const ConfigEntries& e_;
};

// Runs a quantities-module constructor and reports its failure against `key`.
template <class F>
auto checked(const std::string& key, F&& make) {
    try {
        return make();
    } catch (const std::exception& e) {
        throw config_error(key, std::string(e.what()) + "; " + expected(key));
    }
}

inline std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace detail

/// Resolves entries into a validated RunConfig. Every physical value passes
/// through its quantities-module constructor before anything is computed.
inline RunConfig resolve_config(const ConfigEntries& entries) {
    const detail::EntryReader in(entries);
    using detail::checked;
    using detail::format_number;
    RunConfig rc{.spectrum = SpectrumConfig{
                     .particle = ParticleModel(1.0, DielectricModel::vacuum()),
                     .motion = MotionState::at_rest(),
                     .thermal = {Temperature(0.0), Temperature(0.0)},
                     .z = Height(1.0),
                     .omega_grid = {},
                 },
                 .echo = {}};
    auto& echo = rc.echo;
    auto note = [&](const std::string& key, const std::string& value) { echo.emplace_back(key, value); };

    const std::string material = in.choice<std::string>(
        "material", {{"drude", "drude"}, {"lorentzian", "lorentzian"}}, "drude");
    note("material", material);
    const double radius_nm = in.number("radius_nm");
    note("radius_nm", format_number(radius_nm));
    DielectricModel dielectric = DielectricModel::vacuum();
    if (material == "drude") {
        const double sigma0 = in.number("sigma0");
        if (!(sigma0 > 0.0)) throw config_error("sigma0", detail::expected("sigma0"));
        dielectric = DielectricModel::drude_dc(sigma0);
        note("sigma0", format_number(sigma0));
    } else {
        const double wp = in.number("lorentz_omega_p");
        const double w0 = in.number("lorentz_omega_0");
        const double g = in.number("lorentz_gamma");
        if (!(wp > 0.0)) throw config_error("lorentz_omega_p", detail::expected("lorentz_omega_p"));
        if (!(w0 > 0.0)) throw config_error("lorentz_omega_0", detail::expected("lorentz_omega_0"));
        if (!(g > 0.0)) throw config_error("lorentz_gamma", detail::expected("lorentz_gamma"));
        dielectric = DielectricModel::lorentzian(wp, w0, g);
        note("lorentz_omega_p", format_number(wp));
        note("lorentz_omega_0", format_number(w0));
        note("lorentz_gamma", format_number(g));
    }
    SpectrumConfig& s = rc.spectrum;
    s.particle = checked("radius_nm", [&] { return ParticleModel(radius_nm * 1e-9, dielectric); });

    const double t_p = in.number("T_particle");
    const double t_e = in.number("T_env");
    s.thermal = {checked("T_particle", [&] { return Temperature(t_p); }),
                 checked("T_env", [&] { return Temperature(t_e); })};
    note("T_particle", format_number(t_p));
    note("T_env", format_number(t_e));

    const double z_nm = in.number("z_nm");
    s.z = checked("z_nm", [&] { return Height(z_nm * 1e-9); });
    note("z_nm", format_number(z_nm));

    const double beta = in.number("V0_over_c");
    const Velocity v0 = checked("V0_over_c", [&] { return Velocity::from_beta(beta); });
    s.motion = beta == 0.0 ? MotionState::at_rest() : MotionState::moving(v0);
    note("V0_over_c", format_number(beta));

    double omega_min = 0.0, omega_max = 0.0;
    if (in.has("omega_min") && in.has("omega_max")) {
        omega_min = in.number("omega_min");
        omega_max = in.number("omega_max");
    } else {
        const double t_max = std::max(t_p, t_e);
        if (!(t_max > 0.0)) {
            const std::string key = in.has("omega_min") ? "omega_max" : "omega_min";
            throw config_error(key, "required when both temperatures are 0; " + detail::expected(key));
        }
        const auto band = default_omega_range(t_max);
        omega_min = in.number("omega_min", band.first);
        omega_max = in.number("omega_max", band.second);
    }
    if (!(omega_min > 0.0)) throw config_error("omega_min", detail::expected("omega_min"));
    if (!(omega_max > omega_min)) throw config_error("omega_max", detail::expected("omega_max"));
    const std::size_t points = in.count("omega_points", 64, 2);
    const GridKind grid =
        in.choice<GridKind>("grid", {{"log", GridKind::log}, {"linear", GridKind::linear}}, GridKind::log);
    s.omega_grid = make_omega_grid(omega_min, omega_max, points, grid);
    note("omega_min", format_number(omega_min));
    note("omega_max", format_number(omega_max));
    note("omega_points", std::to_string(points));
    note("grid", grid == GridKind::log ? "log" : "linear");

    s.quad.rel_tol = in.number("rel_tol", s.quad.rel_tol);
    if (!(s.quad.rel_tol >= 0.0)) throw config_error("rel_tol", detail::expected("rel_tol"));
    s.quad.abs_tol = in.number("abs_tol", s.quad.abs_tol);
    if (!(s.quad.abs_tol >= 0.0)) throw config_error("abs_tol", detail::expected("abs_tol"));
    s.quad.max_subdivisions = in.count("max_subdivisions", s.quad.max_subdivisions, 1);
    s.quad.base_rule = in.choice<BaseRule>(
        "base_rule", {{"gk15", BaseRule::GaussKronrod15}, {"cc33", BaseRule::ClenshawCurtis33}},
        BaseRule::GaussKronrod15);
    note("rel_tol", format_number(s.quad.rel_tol));
    note("abs_tol", format_number(s.quad.abs_tol));
    if (!(s.quad.rel_tol > 0.0 || s.quad.abs_tol > 0.0))
        throw config_error("rel_tol", detail::expected("rel_tol"));
    note("max_subdivisions", std::to_string(s.quad.max_subdivisions));
    note("base_rule", s.quad.base_rule == BaseRule::GaussKronrod15 ? "gk15" : "cc33");

    s.convention = in.choice<UnitSystem>(
        "convention",
        {{"gaussian", UnitSystem::PaperGaussianPrefactor}, {"scale-free", UnitSystem::ScaleFree}},
        UnitSystem::PaperGaussianPrefactor);
    note("convention", std::string(to_string(s.convention)));
    s.threads = static_cast<unsigned>(in.count("threads", 1, 1));
    note("threads", std::to_string(s.threads));
    s.diagnostic_plain_product = in.choice<bool>("diagnostic_plain_product",
                                                 {{"true", true}, {"false", false}}, false);
    note("diagnostic_plain_product", s.diagnostic_plain_product ? "true" : "false");
    s.doppler_axis = in.choice<DopplerAxis>("doppler_axis",
                                            {{"x", DopplerAxis::x}, {"y", DopplerAxis::y}}, DopplerAxis::x);
    note("doppler_axis", s.doppler_axis == DopplerAxis::x ? "x" : "y");

    rc.mode = in.choice<RunMode>("mode",
                                 {{"spectrum", RunMode::spectrum},
                                  {"total-power", RunMode::total_power},
                                  {"validate", RunMode::validate}},
                                 RunMode::spectrum);
    rc.format = in.choice<OutputFormat>(
        "format", {{"csv", OutputFormat::csv}, {"jsonl", OutputFormat::jsonl}}, OutputFormat::csv);
    rc.output_path = in.text("output", "-");
    rc.wall_time = in.choice<bool>("wall_time", {{"true", true}, {"false", false}}, false);
    note("mode", rc.mode == RunMode::spectrum      ? "spectrum"
                 : rc.mode == RunMode::total_power ? "total-power"
                                                   : "validate");
    note("format", rc.format == OutputFormat::csv ? "csv" : "jsonl");
    note("output", rc.output_path);
    note("wall_time", rc.wall_time ? "true" : "false");

    try {
        s.validate();
    } catch (const std::exception& e) {
        throw config_error("", e.what());
    }
    return rc;
}

inline RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {}) {
    ConfigEntries entries = parse_config_text(text);
    apply_overrides(entries, overrides);
    return resolve_config(entries);
}

}  // namespace qfric
