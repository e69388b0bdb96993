#pragma once

#include <map>
#include <string>
#include <vector>

namespace pmelab {

enum class BoundKind { Upper, Lower };

/// One row of a per-check time series (t, statistic, bound, margin).
struct SeriesRow {
  double t;
  double statistic;
  double bound;
  double margin;
};

/// Outcome of one numerical estimate check.
///
/// margin = bound - statistic. An upper-bound check passes iff
/// statistic <= bound + tolerance; a lower-bound check iff
/// statistic >= bound - tolerance.
struct CheckReport {
  std::string name;
  std::map<std::string, double> params;
  double statistic = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  BoundKind kind = BoundKind::Upper;
  /// Constructed violation case: the check is expected to fail.
  bool negative_control = false;
  std::vector<SeriesRow> series;
};

CheckReport make_report(std::string name, BoundKind kind, double statistic, double bound, double tolerance,
                        std::map<std::string, double> params = {});

/// Applies the pass rule for the report's kind; also refreshes margin.
void evaluate(CheckReport& report);

/// True when the report met its expectation (pass, or fail for a negative control).
inline bool expectation_met(const CheckReport& r) { return r.negative_control ? !r.pass : r.pass; }

/// Sort by (name, params["m"]) for deterministic merges.
void sort_reports(std::vector<CheckReport>& reports);

}  // namespace pmelab
