#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pmelab/config.hpp"
#include "pmelab/report.hpp"

namespace pmelab {

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitConfigError = 2, kExitRunError = 3 };

/// kExitCheckFailed iff some report missed its expectation (a regular check
/// failed or a negative control passed).
int exit_status(const std::vector<CheckReport>& reports);

/// Solver run plus every configured check, in configuration order.
std::vector<CheckReport> run_checks(const RunConfig& config);

/// l2_heat reports for the (heat.m_values x heat.k_values) sweep.
std::vector<CheckReport> compare_heat_reports(const RunConfig& config);

/// Power-difference sweep and Poincaré quadrature checks.
std::vector<CheckReport> inequality_reports(std::uint64_t cases, std::uint64_t seed);

/// Validates the config for the command, runs it, writes artifacts into
/// config.output_dir and returns the exit status. Progress lines go to log.
int run_command(Command command, const RunConfig& config, std::ostream& log);

}  // namespace pmelab
