#include "pmelab/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pmelab {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_table(std::ostream& os, const Grid& grid, double t, const std::vector<std::string>& names,
                 const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("write_table: column names and data differ in count");
  for (const auto& c : columns) {
    if (c.size() != grid.size()) throw std::invalid_argument("write_table: column length differs from grid size");
  }
  os << "# pmelab table\n";
  os << "# n " << grid.dim() << "\n";
  os << "# N " << grid.points() << "\n";
  os << "# L " << number(grid.half_width()) << "\n";
  os << "# t " << number(t) << "\n";
  os << "# columns x";
  if (grid.dim() == 2) os << " y";
  for (const auto& name : names) os << ' ' << name;
  os << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.position(k);
    os << number(p[0]);
    if (grid.dim() == 2) os << ' ' << number(p[1]);
    for (const auto& c : columns) os << ' ' << number(c[k]);
    os << '\n';
  }
}

void write_field_table(std::ostream& os, const Field& field) {
  write_table(os, field.grid, field.t, {"value"}, {field.values});
}

Field read_field_table(std::istream& is) {
  std::map<std::string, std::string> header;
  std::vector<std::string> columns;
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "columns") {
        std::string c;
        while (ss >> c) columns.push_back(c);
      } else if (!key.empty()) {
        std::string value;
        ss >> value;
        header[key] = value;
      }
      continue;
    }
    rows.push_back(line);
  }
  for (const char* key : {"n", "N", "L", "t"}) {
    if (!header.count(key)) throw std::runtime_error(std::string("field table: missing header line '# ") + key + "'");
  }
  const int n = std::stoi(header["n"]);
  const Grid grid(n, std::stod(header["L"]), std::stoi(header["N"]));
  const double t = std::stod(header["t"]);
  const std::size_t coords = static_cast<std::size_t>(n);
  std::size_t width = columns.empty() ? coords + 1 : columns.size();
  std::size_t pick = coords;
  for (std::size_t c = coords; c < columns.size(); ++c) {
    if (columns[c] == "value") pick = c;
  }
  if (width <= coords) throw std::runtime_error("field table: no data column");
  if (rows.size() != grid.size()) {
    throw std::runtime_error("field table: expected " + std::to_string(grid.size()) + " rows, found " +
                             std::to_string(rows.size()));
  }
  Field field(grid, t);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::istringstream ss(rows[k]);
    std::vector<double> entries;
    std::string token;
    while (ss >> token) {
      try {
        entries.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw std::runtime_error("field table: row " + std::to_string(k) + " has a non-numeric entry '" + token + "'");
      }
    }
    if (entries.size() != width) {
      throw std::runtime_error("field table: row " + std::to_string(k) + " has " + std::to_string(entries.size()) +
                               " entries, expected " + std::to_string(width));
    }
    field.values[k] = entries[pick];
  }
  return field;
}

Field read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file " + path.string());
  return read_field_table(in);
}

void write_field_file(const std::filesystem::path& path, const Field& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field file " + path.string());
  write_field_table(out, field);
}

void write_mask_table(std::ostream& os, const PositivityMask& mask) {
  std::vector<double> flags(mask.flags.begin(), mask.flags.end());
  std::vector<double> boundary(flags.size(), 0.0);
  if (!mask.empty()) {
    for (std::size_t k : support_radius_numeric(mask).boundary_cells) boundary[k] = 1.0;
  }
  write_table(os, mask.grid, mask.t, {"value", "boundary"}, {flags, boundary});
}

void write_surface_table(std::ostream& os, const SurfaceField& surface) {
  std::vector<double> grad(surface.phi.size());
  std::vector<double> ratio(surface.phi.size());
  for (std::size_t k = 0; k < grad.size(); ++k) {
    const auto& g = surface.grad_phi[k];
    grad[k] = std::hypot(g[0], g[1]);
    ratio[k] = 1.0 + g[0] * g[0] + g[1] * g[1];
  }
  write_table(os, surface.base.grid, surface.base.t, {"value", "grad_norm", "ratio"}, {surface.phi, grad, ratio});
}

}  // namespace pmelab
