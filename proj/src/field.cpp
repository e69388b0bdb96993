#include "pmelab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pmelab {

Grid::Grid(int dim, double half_width, int points_per_axis)
    : dim_(dim), half_width_(half_width), points_(points_per_axis), spacing_(0.0) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half width must be positive and finite");
  }
  if (points_per_axis < 3 || points_per_axis % 2 == 0) {
    throw std::invalid_argument("grid points per axis must be odd and >= 3, got " +
                                std::to_string(points_per_axis));
  }
  spacing_ = 2.0 * half_width / (points_per_axis - 1);
}

std::size_t Grid::size() const {
  const auto n = static_cast<std::size_t>(points_);
  return dim_ == 1 ? n : n * n;
}

std::array<int, 2> Grid::unflatten(std::size_t k) const {
  if (dim_ == 1) return {static_cast<int>(k), 0};
  return {static_cast<int>(k % points_), static_cast<int>(k / points_)};
}

std::size_t Grid::flatten(int i, int j) const {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * static_cast<std::size_t>(points_);
}

std::array<double, 2> Grid::position(std::size_t k) const {
  const auto [i, j] = unflatten(k);
  return {coord(i), dim_ == 1 ? 0.0 : coord(j)};
}

double Grid::radius(std::size_t k) const {
  const auto p = position(k);
  return std::hypot(p[0], p[1]);
}

bool Grid::on_edge(std::size_t k) const {
  const auto [i, j] = unflatten(k);
  const int last = points_ - 1;
  if (i == 0 || i == last) return true;
  return dim_ == 2 && (j == 0 || j == last);
}

Grid Grid::refined() const { return Grid(dim_, half_width_, 2 * points_ - 1); }

bool Grid::operator==(const Grid& other) const {
  return dim_ == other.dim_ && points_ == other.points_ && half_width_ == other.half_width_;
}

Field::Field(Grid g, double time) : grid(g), t(time), values(g.size(), 0.0) {}

Field::Field(Grid g, double time, std::vector<double> v) : grid(g), t(time), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("field has " + std::to_string(values.size()) +
                                " values but the grid has " + std::to_string(grid.size()) + " points");
  }
}

double Field::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double Field::sup() const { return *std::max_element(values.begin(), values.end()); }

double Field::inf() const { return *std::min_element(values.begin(), values.end()); }

std::vector<std::array<double, 2>> gradient(const Grid& grid, std::span<const double> values) {
  const int n = grid.points();
  const double dx = grid.spacing();
  std::vector<std::array<double, 2>> out(grid.size(), {0.0, 0.0});
  auto axis_derivative = [&](int idx, auto at) {
    if (idx == 0) return (at(1) - at(0)) / dx;
    if (idx == n - 1) return (at(n - 1) - at(n - 2)) / dx;
    return (at(idx + 1) - at(idx - 1)) / (2.0 * dx);
  };
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.unflatten(k);
    out[k][0] = axis_derivative(i, [&](int ii) { return values[grid.flatten(ii, j)]; });
    if (grid.dim() == 2) {
      out[k][1] = axis_derivative(j, [&](int jj) { return values[grid.flatten(i, jj)]; });
    }
  }
  return out;
}

double laplacian_at(const Grid& grid, std::span<const double> values, std::size_t k) {
  const auto [i, j] = grid.unflatten(k);
  const double inv_dx2 = 1.0 / (grid.spacing() * grid.spacing());
  double lap = (values[grid.flatten(i + 1, j)] - 2.0 * values[k] + values[grid.flatten(i - 1, j)]) * inv_dx2;
  if (grid.dim() == 2) {
    lap += (values[grid.flatten(i, j + 1)] - 2.0 * values[k] + values[grid.flatten(i, j - 1)]) * inv_dx2;
  }
  return lap;
}

std::vector<std::size_t> neighbours(const Grid& grid, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(4);
  const auto [i, j] = grid.unflatten(k);
  const int last = grid.points() - 1;
  if (i > 0) out.push_back(grid.flatten(i - 1, j));
  if (i < last) out.push_back(grid.flatten(i + 1, j));
  if (grid.dim() == 2) {
    if (j > 0) out.push_back(grid.flatten(i, j - 1));
    if (j < last) out.push_back(grid.flatten(i, j + 1));
  }
  return out;
}

double l1_distance(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("l1_distance: fields live on different grids");
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) s += std::abs(a.values[k] - b.values[k]);
  return s * a.grid.cell_volume();
}

}  // namespace pmelab
