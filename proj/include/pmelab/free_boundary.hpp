#pragma once

#include <cstddef>
#include <vector>

#include "pmelab/field.hpp"
#include "pmelab/solver.hpp"

namespace pmelab {

/// Discrete positivity set {u > threshold}.
struct PositivityMask {
  Grid grid;
  double t = 0.0;
  std::vector<char> flags;
  double threshold = 0.0;

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == flags.size(); }
};

struct SupportStats {
  double radius = 0.0;
  /// Flagged cells with at least one unflagged axis neighbour.
  std::vector<std::size_t> boundary_cells;
};

/// Default cutoff: 1e-10 times the data bound M.
inline double default_positivity_threshold(double M) { return 1e-10 * M; }

PositivityMask positivity_set(const Field& field, double threshold);

SupportStats support_radius_numeric(const PositivityMask& mask);

/// Distance, in cells along axis paths, from each flagged cell to the nearest
/// unflagged cell (1 for boundary cells); 0 for unflagged cells. Cells that
/// cannot reach an unflagged cell within `cap` steps get cap + 1.
std::vector<int> interface_distance(const PositivityMask& mask, int cap);

struct PersistenceViolation {
  std::size_t cell;
  double t_positive;
  double t_lost;
};

struct PersistenceReport {
  bool nested = true;
  std::vector<PersistenceViolation> violations;
};

/// Checks that positivity sets grow monotonically along the trajectory.
PersistenceReport persistence_check(const std::vector<Field>& snapshots, double threshold);

struct TangencyResult {
  /// max |∇(u^β)| over the boundary cells of the mask.
  double max_gradient = 0.0;
  std::size_t boundary_count = 0;
  /// False when β <= h: the surface is not expected to be tangent.
  bool in_hypothesis = true;
};

TangencyResult tangency_profile(const Field& field, double beta, const PositivityMask& mask, double h);

}  // namespace pmelab
