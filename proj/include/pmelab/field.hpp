#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pmelab {

/// Uniform, origin-centred tensor grid on [-L, L]^n with n in {1, 2}.
///
/// The number of points per axis is odd so that x = 0 is a sample point and
/// symmetric data stays symmetric under the solver.
class Grid {
 public:
  Grid(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points() const { return points_; }
  double spacing() const { return spacing_; }
  /// dx^n, the volume attached to one sample.
  double cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }
  std::size_t size() const;

  double coord(int i) const { return -half_width_ + i * spacing_; }
  /// Axis indices of a flat index (second entry is 0 in 1D).
  std::array<int, 2> unflatten(std::size_t k) const;
  std::size_t flatten(int i, int j = 0) const;
  std::array<double, 2> position(std::size_t k) const;
  double radius(std::size_t k) const;
  /// True if k lies on the outer edge of the grid along any axis.
  bool on_edge(std::size_t k) const;

  /// Grid obtained by halving dx over the same domain (2N-1 points).
  Grid refined() const;

  bool operator==(const Grid& other) const;

 private:
  int dim_;
  double half_width_;
  int points_;
  double spacing_;
};

/// Snapshot of a nonnegative sampled solution at one time.
struct Field {
  Grid grid;
  double t = 0.0;
  std::vector<double> values;

  Field(Grid g, double time);
  Field(Grid g, double time, std::vector<double> v);

  /// Riemann sum of the values, sum u_i dx^n.
  double mass() const;
  double sup() const;
  double inf() const;
};

/// Centred-difference gradient of sampled data; one-sided on the grid edge.
std::vector<std::array<double, 2>> gradient(const Grid& grid, std::span<const double> values);

/// Standard (2n+1)-point discrete Laplacian at an index whose neighbours all exist.
double laplacian_at(const Grid& grid, std::span<const double> values, std::size_t k);

/// Flat indices of the 2n axis neighbours of k that exist on the grid.
std::vector<std::size_t> neighbours(const Grid& grid, std::size_t k);

/// sum |a - b| dx^n.
double l1_distance(const Field& a, const Field& b);

}  // namespace pmelab
