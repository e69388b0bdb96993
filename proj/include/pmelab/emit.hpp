#pragma once

// Report output: summary.json (one record per check with fields name, params,
// statistic, bound, margin, tolerance, pass; sorted by (name, m)) plus one
// flat table per check with the header "t statistic bound margin".

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmelab/report.hpp"

namespace pmelab {

nlohmann::json report_record(const CheckReport& report);

/// Text of one flat table (header line plus one row per series entry).
std::string report_table(const CheckReport& report);

/// Writes the summary and tables into dir (created if missing) and returns the
/// written paths. Throws on an empty list or an unwritable directory.
std::vector<std::filesystem::path> emit_report(std::vector<CheckReport> reports, const std::filesystem::path& dir);

}  // namespace pmelab
