#include "pmelab/emit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pmelab {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string file_stem(std::size_t index, const std::string& name) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu_", index);
  std::string stem = buf;
  for (char ch : name) stem += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') ? ch : '-';
  return stem;
}

}  // namespace

nlohmann::json report_record(const CheckReport& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  nlohmann::json record = nlohmann::json::object();
  record["name"] = r.name;
  record["params"] = params;
  record["statistic"] = r.statistic;
  record["bound"] = r.bound;
  record["margin"] = r.margin;
  record["tolerance"] = r.tolerance;
  record["pass"] = r.pass;
  return record;
}

std::string report_table(const CheckReport& r) {
  std::string out = "t statistic bound margin\n";
  if (r.series.empty()) {
    const auto t = r.params.find("t");
    out += number(t == r.params.end() ? 0.0 : t->second) + ' ' + number(r.statistic) + ' ' + number(r.bound) + ' ' +
           number(r.margin) + '\n';
    return out;
  }
  for (const auto& row : r.series) {
    out += number(row.t) + ' ' + number(row.statistic) + ' ' + number(row.bound) + ' ' + number(row.margin) + '\n';
  }
  return out;
}

std::vector<std::filesystem::path> emit_report(std::vector<CheckReport> reports, const std::filesystem::path& dir) {
  if (reports.empty()) throw std::invalid_argument("emit_report: no reports to write");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("emit_report: cannot create output directory " + dir.string());
  }
  sort_reports(reports);
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& r : reports) summary.push_back(report_record(r));
  std::vector<std::filesystem::path> written;
  const auto summary_path = dir / "summary.json";
  write_file(summary_path, summary.dump(2) + "\n");
  written.push_back(summary_path);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto path = dir / (file_stem(i, reports[i].name) + ".txt");
    write_file(path, report_table(reports[i]));
    written.push_back(path);
  }
  return written;
}

}  // namespace pmelab
