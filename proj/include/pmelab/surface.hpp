#pragma once

// Graph surface S(t) of φ = u^β: metric comparison with the flat metric and
// the residual of the degenerate equation satisfied by φ.

#include <array>
#include <cstddef>
#include <vector>

#include "pmelab/field.hpp"
#include "pmelab/report.hpp"

namespace pmelab {

struct SurfaceField {
  double beta = 2.0;
  double epsilon = 0.0;  // beta - h
  Field base;
  std::vector<double> phi;
  std::vector<std::array<double, 2>> grad_phi;
};

/// φ = u^β, zero wherever u <= threshold. Rejects β <= h.
SurfaceField build_surface(const Field& field, double beta, double h, double threshold);

struct MetricSample {
  std::size_t location;
  /// (ds)^2 / (dρ)^2 along the gradient direction, 1 + |∇φ|^2.
  double ratio;
};

std::vector<MetricSample> metric_samples(const SurfaceField& surface);

/// max over cells of ratio - 1.
double max_metric_excess(const SurfaceField& surface);

/// Predicted decay exponent -2nε/(n(m-1)+2) - 1 of max |∇φ|^2.
double metric_decay_exponent(double m, int n, double epsilon);

/// Log-log fit of max(ratio - 1) against t, compared with the predicted
/// exponent: statistic = |fitted - predicted| / |predicted|, bound 0.15.
/// Needs four or more surfaces.
CheckReport metric_pinch(const std::vector<SurfaceField>& surfaces, double m);

/// (ds)^2 <= (1 + C4 t^p)(dρ)^2 with C4 fitted at the earliest surface:
/// statistic = max over surfaces of (ratio - 1) / (C4 t^p), bound 1.
CheckReport metric_bound(const std::vector<SurfaceField>& surfaces, double m);

struct TransformedResidual {
  /// Cells at least two axis steps from the zero set.
  double interior_max = 0.0;
  std::size_t interior_cells = 0;
  /// Positive cells within three steps of the zero set.
  double near_interface_max = 0.0;
  std::size_t near_interface_cells = 0;
};

/// |φ_t - m[φ^{(m-1)/β} Δφ + ((m-β)/β) φ^{(m-β-1)/β} |∇φ|^2]| with centred
/// differences in space and the three-point rule in time, evaluated at every
/// snapshot that has a neighbour on both sides. Only requires β > 0.
TransformedResidual transformed_pde_residual_stats(const std::vector<Field>& snapshots, double beta, double m,
                                                   double threshold);

/// The classical equation for φ; requires β > 2h and three or more snapshots.
/// statistic = interior max, bound 0, tolerance 10 (dx^2 + Δt^2) max|φ_t|.
CheckReport transformed_pde_residual(const std::vector<Field>& snapshots, double beta, double m, double h,
                                     double threshold);

}  // namespace pmelab
