#include "pmelab/report.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace pmelab {

CheckReport make_report(std::string name, BoundKind kind, double statistic, double bound, double tolerance,
                        std::map<std::string, double> params) {
  CheckReport r;
  r.name = std::move(name);
  r.kind = kind;
  r.statistic = statistic;
  r.bound = bound;
  r.tolerance = tolerance;
  r.params = std::move(params);
  evaluate(r);
  return r;
}

void evaluate(CheckReport& r) {
  r.margin = r.bound - r.statistic;
  if (r.kind == BoundKind::Upper) {
    r.pass = r.statistic <= r.bound + r.tolerance;
  } else {
    r.pass = r.statistic >= r.bound - r.tolerance;
  }
}

void sort_reports(std::vector<CheckReport>& reports) {
  auto key = [](const CheckReport& r) {
    const auto it = r.params.find("m");
    const double m = it == r.params.end() ? -std::numeric_limits<double>::infinity() : it->second;
    return std::make_tuple(r.name, m);
  };
  std::stable_sort(reports.begin(), reports.end(), [&](const CheckReport& a, const CheckReport& b) { return key(a) < key(b); });
}

}  // namespace pmelab
