#include "pmelab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pmelab/fit.hpp"
#include "pmelab/free_boundary.hpp"

namespace pmelab {

namespace {

std::vector<double> powered(const Field& field, double beta, double threshold) {
  std::vector<double> phi(field.values.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    phi[k] = field.values[k] > threshold ? std::pow(field.values[k], beta) : 0.0;
  }
  return phi;
}

void require_surfaces(const std::vector<SurfaceField>& surfaces, std::size_t count, const char* where) {
  if (surfaces.size() < count) {
    throw std::invalid_argument(std::string(where) + ": needs at least " + std::to_string(count) + " surfaces");
  }
  for (const auto& s : surfaces) {
    if (!(s.base.t > 0.0)) throw std::invalid_argument(std::string(where) + ": surface times must be positive");
  }
}

}  // namespace

SurfaceField build_surface(const Field& field, double beta, double h, double threshold) {
  if (!(beta > h)) throw std::invalid_argument("build_surface: beta must exceed h");
  SurfaceField s{beta, beta - h, field, powered(field, beta, threshold), {}};
  s.grad_phi = gradient(field.grid, s.phi);
  return s;
}

std::vector<MetricSample> metric_samples(const SurfaceField& surface) {
  std::vector<MetricSample> out;
  out.reserve(surface.phi.size());
  for (std::size_t k = 0; k < surface.phi.size(); ++k) {
    const auto& g = surface.grad_phi[k];
    out.push_back({k, 1.0 + g[0] * g[0] + g[1] * g[1]});
  }
  return out;
}

double max_metric_excess(const SurfaceField& surface) {
  double worst = 0.0;
  for (const auto& g : surface.grad_phi) worst = std::max(worst, g[0] * g[0] + g[1] * g[1]);
  return worst;
}

double metric_decay_exponent(double m, int n, double epsilon) {
  return -2.0 * n * epsilon / (n * (m - 1.0) + 2.0) - 1.0;
}

CheckReport metric_pinch(const std::vector<SurfaceField>& surfaces, double m) {
  require_surfaces(surfaces, 4, "metric_pinch");
  const int n = surfaces.front().base.grid.dim();
  const double predicted = metric_decay_exponent(m, n, surfaces.front().epsilon);
  std::vector<double> ts;
  std::vector<double> excess;
  for (const auto& s : surfaces) {
    ts.push_back(s.base.t);
    excess.push_back(max_metric_excess(s));
  }
  const LineFit fit = log_log_fit(ts, excess);
  const double mismatch = std::abs(fit.slope - predicted) / std::abs(predicted);
  const double c4 = excess.front() / std::pow(ts.front(), predicted);
  auto report = make_report("metric_pinch", BoundKind::Upper, mismatch, 0.15, 0.0,
                            {{"m", m},
                             {"n", static_cast<double>(n)},
                             {"beta", surfaces.front().beta},
                             {"epsilon", surfaces.front().epsilon},
                             {"fitted_exponent", fit.slope},
                             {"predicted_exponent", predicted},
                             {"C4", c4},
                             {"t_first", ts.front()},
                             {"t_last", ts.back()}});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double b = c4 * std::pow(ts[i], predicted);
    report.series.push_back({ts[i], excess[i], b, b - excess[i]});
  }
  return report;
}

CheckReport metric_bound(const std::vector<SurfaceField>& surfaces, double m) {
  require_surfaces(surfaces, 1, "metric_bound");
  const int n = surfaces.front().base.grid.dim();
  const double p = metric_decay_exponent(m, n, surfaces.front().epsilon);
  const double c4 = max_metric_excess(surfaces.front()) / std::pow(surfaces.front().base.t, p);
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (const auto& s : surfaces) {
    const double b = c4 * std::pow(s.base.t, p);
    const double e = max_metric_excess(s);
    const double q = b > 0.0 ? e / b : (e > 0.0 ? INFINITY : 0.0);
    statistic = std::max(statistic, q);
    rows.push_back({s.base.t, e, b, b - e});
  }
  auto report = make_report("metric_bound", BoundKind::Upper, statistic, 1.0, 1e-9,
                            {{"m", m},
                             {"n", static_cast<double>(n)},
                             {"beta", surfaces.front().beta},
                             {"epsilon", surfaces.front().epsilon},
                             {"C4", c4},
                             {"exponent", p}});
  report.series = std::move(rows);
  return report;
}

TransformedResidual transformed_pde_residual_stats(const std::vector<Field>& snapshots, double beta, double m,
                                                   double threshold) {
  if (snapshots.size() < 3) throw std::invalid_argument("transformed_pde_residual: needs at least three snapshots");
  if (!(beta > 0.0)) throw std::invalid_argument("transformed_pde_residual: beta must be positive");
  TransformedResidual out;
  const Grid& g = snapshots.front().grid;
  const double a1 = (m - 1.0) / beta;
  const double a2 = (m - beta - 1.0) / beta;
  const double c2 = (m - beta) / beta;
  for (std::size_t s = 1; s + 1 < snapshots.size(); ++s) {
    const auto prev = powered(snapshots[s - 1], beta, threshold);
    const auto cur = powered(snapshots[s], beta, threshold);
    const auto next = powered(snapshots[s + 1], beta, threshold);
    const double h1 = snapshots[s].t - snapshots[s - 1].t;
    const double h2 = snapshots[s + 1].t - snapshots[s].t;
    const double w_prev = -h2 / (h1 * (h1 + h2));
    const double w_cur = (h2 - h1) / (h1 * h2);
    const double w_next = h1 / (h2 * (h1 + h2));
    const auto mask = positivity_set(snapshots[s], threshold);
    const auto dist = interface_distance(mask, 3);
    const auto grad = gradient(g, cur);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (!mask.flags[k] || g.on_edge(k)) continue;
      const double phi = cur[k];
      const double phi_t = w_prev * prev[k] + w_cur * cur[k] + w_next * next[k];
      const double grad2 = grad[k][0] * grad[k][0] + grad[k][1] * grad[k][1];
      const double rhs = m * (std::pow(phi, a1) * laplacian_at(g, cur, k) + c2 * std::pow(phi, a2) * grad2);
      const double r = std::abs(phi_t - rhs);
      if (dist[k] >= 2) {
        out.interior_max = std::max(out.interior_max, r);
        ++out.interior_cells;
      }
      if (dist[k] <= 3) {
        out.near_interface_max = std::max(out.near_interface_max, r);
        ++out.near_interface_cells;
      }
    }
  }
  return out;
}

CheckReport transformed_pde_residual(const std::vector<Field>& snapshots, double beta, double m, double h,
                                     double threshold) {
  if (!(beta > 2.0 * h)) throw std::invalid_argument("transformed_pde_residual: beta must exceed 2h");
  const auto stats = transformed_pde_residual_stats(snapshots, beta, m, threshold);
  double dt = 0.0;
  double phi_t_scale = 0.0;
  for (std::size_t s = 0; s + 1 < snapshots.size(); ++s) {
    dt = std::max(dt, snapshots[s + 1].t - snapshots[s].t);
    const auto a = powered(snapshots[s], beta, threshold);
    const auto b = powered(snapshots[s + 1], beta, threshold);
    for (std::size_t k = 0; k < a.size(); ++k) {
      phi_t_scale = std::max(phi_t_scale, std::abs(b[k] - a[k]) / (snapshots[s + 1].t - snapshots[s].t));
    }
  }
  const double dx = snapshots.front().grid.spacing();
  const double tolerance = 10.0 * (dx * dx + dt * dt) * std::max(phi_t_scale, 1e-300);
  auto report = make_report("transformed_pde", BoundKind::Upper, stats.interior_max, 0.0, tolerance,
                            {{"m", m},
                             {"h", h},
                             {"beta", beta},
                             {"near_interface_max", stats.near_interface_max},
                             {"interior_cells", static_cast<double>(stats.interior_cells)},
                             {"near_interface_cells", static_cast<double>(stats.near_interface_cells)},
                             {"grid.points", static_cast<double>(snapshots.front().grid.points())}});
  report.series.push_back({snapshots[snapshots.size() / 2].t, stats.interior_max, 0.0, -stats.interior_max});
  return report;
}

}  // namespace pmelab
