#pragma once

// Plain-text grid tables. Layout:
//
//   # pmelab table
//   # n 1
//   # N 401
//   # L 4
//   # t 1
//   # columns x value
//   -4 0
//   ...
//
// One row per sample in flat-index order (x fastest), coordinates first.
// Values are written with 17 significant digits so tables round-trip exactly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmelab/field.hpp"
#include "pmelab/free_boundary.hpp"
#include "pmelab/surface.hpp"

namespace pmelab {

void write_table(std::ostream& os, const Grid& grid, double t, const std::vector<std::string>& names,
                 const std::vector<std::vector<double>>& columns);

void write_field_table(std::ostream& os, const Field& field);

/// Reads the "value" column (or the first data column) of a table.
Field read_field_table(std::istream& is);

Field read_field_file(const std::filesystem::path& path);
void write_field_file(const std::filesystem::path& path, const Field& field);

/// Mask flags (0/1) plus a boundary-cell indicator column.
void write_mask_table(std::ostream& os, const PositivityMask& mask);

/// phi, |grad phi| and the metric ratio 1 + |grad phi|^2.
void write_surface_table(std::ostream& os, const SurfaceField& surface);

}  // namespace pmelab
