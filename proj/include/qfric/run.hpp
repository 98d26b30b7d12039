#pragma once

// Executes a resolved RunConfig and writes its result; shared by the
// command-line tool and the tests.

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "qfric/config.hpp"
#include "qfric/output.hpp"
#include "qfric/spectrum.hpp"
#include "qfric/validate.hpp"

namespace qfric {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3,
    exit_io = 4,
};

/// Computes and writes to `out`; diagnostics go to `log`. Returns exit_ok,
/// or exit_numerical when a grid point failed to converge or a check failed.
inline int execute(const RunConfig& rc, std::ostream& out, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const int calibration = sign_calibration(rc.spectrum);
    Metadata meta = base_metadata(rc, calibration);
    auto finish_meta = [&] {
        if (rc.wall_time) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            meta.emplace_back("wall_time_s", format_double(dt.count()));
        }
    };

    if (rc.mode == RunMode::validate) {
        const std::vector<CheckResult> checks = run_invariant_suite(rc.spectrum);
        bool ok = true;
        for (const CheckResult& c : checks) {
            ok = ok && c.passed;
            log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        }
        finish_meta();
        write_checks(out, rc.format, checks, meta);
        return ok ? exit_ok : exit_numerical;
    }

    const SpectrumResult s = friction_spectrum(rc.spectrum);
    add_totals(meta, s);
    finish_meta();
    for (const std::string& w : s.warnings) log << "warning: " << w << '\n';
    if (rc.mode == RunMode::total_power) {
        write_total_power(out, rc.format, s, meta);
    } else if (rc.format == OutputFormat::csv) {
        write_spectrum_csv(out, s, meta);
    } else {
        write_spectrum_jsonl(out, s, meta);
    }
    std::size_t failed = 0;
    for (const SpectrumRow& r : s.rows) failed += r.converged ? 0 : 1;
    if (failed > 0) {
        log << "error: " << failed << " of " << s.rows.size()
            << " grid points did not converge; rows are flagged converged = 0\n";
        return exit_numerical;
    }
    return exit_ok;
}

/// execute() with the output routed to rc.output_path ("-" is stdout).
inline int execute_to_destination(const RunConfig& rc, std::ostream& log) {
    if (rc.output_path == "-") {
        const int code = execute(rc, std::cout, log);
        std::cout.flush();
        if (!std::cout) {
            log << "error: failed writing to stdout\n";
            return exit_io;
        }
        return code;
    }
    std::ofstream file(rc.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        log << "error: cannot open output file " << rc.output_path << '\n';
        return exit_io;
    }
    const int code = execute(rc, file, log);
    file.close();
    if (!file) {
        log << "error: failed writing output file " << rc.output_path << '\n';
        return exit_io;
    }
    return code;
}

}  // namespace qfric
