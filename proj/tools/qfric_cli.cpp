// Command-line front end: spectrum sweeps, total power and the invariant
// self-check, driven by a flat key = value config file.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfric/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Thermal radiation and quantum friction spectra of a small particle above a mirror"};
    std::string config_path;
    std::vector<std::string> overrides;
    std::string mode;
    std::string output;
    app.add_option("--config", config_path, "Config file with one key = value per line");
    app.add_option("--set", overrides, "Override one key, key=value (repeatable)")->allow_extra_args(false);
    app.add_option("--mode", mode, "spectrum | total-power | validate");
    app.add_option("--output", output, "Output path, - for stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qfric::exit_ok : qfric::exit_config;
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read config file " << config_path << '\n';
            return qfric::exit_io;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    if (!mode.empty()) overrides.push_back("mode=" + mode);
    if (!output.empty()) overrides.push_back("output=" + output);

    std::optional<qfric::RunConfig> rc;
    try {
        rc = qfric::parse_config(text, overrides);
    } catch (const qfric::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return qfric::exit_config;
    }
    try {
        return qfric::execute_to_destination(*rc, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfric::exit_numerical;
    }
}
