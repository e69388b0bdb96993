#pragma once

// Numerical checks of the a priori estimates for u_t = Δ(u^m): each takes
// sampled snapshots (from the solver or from closed forms) and returns a
// CheckReport with statistic, bound, tolerance and a pass flag.

#include <cstdint>
#include <optional>
#include <vector>

#include "pmelab/field.hpp"
#include "pmelab/report.hpp"
#include "pmelab/solver.hpp"

namespace pmelab {

/// Max relative drift of sum u dx^n over the snapshots; bound 0, tolerance 1e-12.
CheckReport check_mass(const std::vector<Field>& snapshots);

/// u_t >= -u / ((m-1) t), tested with forward differences between consecutive
/// snapshots. statistic = min over cells of Δu/Δt + u/((m-1)t).
CheckReport check_ab_time(const std::vector<Field>& snapshots, double m);

struct PressureResidual {
  /// min over interior cells of Δp + n/((n(m-1)+2) t)
  double min_residual = 0.0;
  double max_abs_residual = 0.0;
  std::size_t cells = 0;
};

/// Discrete Laplacian of p = m/(m-1) u^{m-1} on cells at least margin_cells + 1
/// axis steps away from the zero set.
PressureResidual pressure_residual(const Field& field, double m, double threshold, int margin_cells = 1);

/// Δp >= -n/((n(m-1)+2) t) on the support interior. Default tolerance 5 dx^2.
CheckReport check_ab_pressure(const Field& field, double m, double threshold,
                              std::optional<double> tolerance = std::nullopt, int margin_cells = 1);

/// statistic = max over cells (and snapshots) of |∇(u^h)|^2 C1 t, bound 1, tolerance dx.
CheckReport check_gradient_bound(const std::vector<Field>& snapshots, double m, double h, double M);

struct HolderEstimate {
  double h = 1.0;
  /// sup of |u(p1) - u(p2)| / (|x1-x2|^{1/h} + |t1-t2|^{1/(2h)}) over the sampled pairs.
  double nu_hat = 0.0;
  std::size_t sample_count = 0;
  double dx = 0.0;
};

/// Scans all adjacent space and time pairs with t >= tau and |x| <= K, then
/// tops up with seeded uniform random pairs until min_pairs is reached.
HolderEstimate holder_quotient(const std::vector<Field>& snapshots, double h, double tau, double K,
                               std::uint64_t seed = 20240229, std::size_t min_pairs = 100000);

/// Bounded-modulus check across grid refinements: statistic = max relative
/// change of nu_hat between consecutive levels, bound 0.2.
CheckReport check_holder_refinement(const std::vector<HolderEstimate>& levels);

/// (sup u) t^{n/(n(m-1)+2)} stays below 1.05 times its value at the first snapshot.
/// m = 1 is accepted and gives the heat-kernel rate n/2.
CheckReport check_decay(const std::vector<Field>& snapshots, double m);

/// Numerical support radius minus χ(t); lower bound 0, tolerance dx.
CheckReport check_propagation(const std::vector<Field>& snapshots, double m, double mass, double threshold);

struct HeatDistance {
  double m = 1.0;
  double k = 1.0;
  /// max over snapshots of ∫_{|x|<=k} (v - u)^2 dx
  double statistic = 0.0;
  std::vector<std::pair<double, double>> series;
};

/// Runs the heat and porous-medium problems from the same data and measures
/// their squared L2 distance on the ball |x| <= k. m == 1 uses the heat stencil
/// for both, giving an exact zero.
HeatDistance l2_distance_heat(double m, double k, const PMEProblem& shared, const Grid& grid,
                              const SchemeConfig& config = {});

/// Reports for an (m, k) sweep: one envelope report per run with the fitted
/// constant C* = max stat / ((m-1) + 1/k), a trend report requiring the
/// statistic to decrease strictly as m decreases at every k, and (with at least
/// three runs) the relative residual of the least-squares fit a(m-1) + b/k + c.
std::vector<CheckReport> heat_closeness_reports(const std::vector<HeatDistance>& runs);

/// Positivity persistence: statistic = number of cells that lose positivity
/// at a later snapshot, bound 0.
CheckReport check_persistence(const std::vector<Field>& snapshots, double threshold);

/// Boundary tangency of u^β under refinement. levels[j] holds the snapshots of
/// the same run on successively refined grids (same times). statistic = max
/// over snapshots and consecutive levels of fine/coarse boundary |∇(u^β)|,
/// bound 1/1.8.
CheckReport check_tangency_refinement(const std::vector<std::vector<Field>>& levels, double beta, double h,
                                      double threshold);

/// η-continuation convergence: statistic = max ratio of consecutive L1
/// differences, bound 1. Needs at least three η values.
CheckReport check_continuation(const ContinuationResult& result);

}  // namespace pmelab
