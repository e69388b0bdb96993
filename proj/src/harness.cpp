#include "pmelab/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "pmelab/analytic.hpp"
#include "pmelab/free_boundary.hpp"

namespace pmelab {

namespace {

std::map<std::string, double> grid_params(const Field& f) {
  return {{"n", static_cast<double>(f.grid.dim())},
          {"grid.points", static_cast<double>(f.grid.points())},
          {"domain.half_width", f.grid.half_width()}};
}

std::map<std::string, double> base_params(const Field& f, double m) {
  auto p = grid_params(f);
  p["m"] = m;
  return p;
}

void require_snapshots(const std::vector<Field>& snaps, std::size_t count, const char* where) {
  if (snaps.size() < count) {
    throw std::invalid_argument(std::string(where) + ": needs at least " + std::to_string(count) + " snapshots");
  }
}

}  // namespace

CheckReport check_mass(const std::vector<Field>& snapshots) {
  require_snapshots(snapshots, 1, "check_mass");
  const double m0 = snapshots.front().mass();
  double drift = 0.0;
  std::vector<SeriesRow> rows;
  for (const Field& f : snapshots) {
    const double d = std::abs(f.mass() - m0) / m0;
    drift = std::max(drift, d);
    rows.push_back({f.t, d, 0.0, -d});
  }
  auto params = grid_params(snapshots.front());
  params["mass"] = m0;
  auto report = make_report("mass", BoundKind::Upper, drift, 0.0, 1e-12, std::move(params));
  report.series = std::move(rows);
  return report;
}

CheckReport check_ab_time(const std::vector<Field>& snapshots, double m) {
  if (!(m > 1.0)) throw std::invalid_argument("check_ab_time: m must be > 1");
  require_snapshots(snapshots, 2, "check_ab_time");
  // Normalised by sup u / t so that one tolerance serves every pair.
  double statistic = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  std::vector<SeriesRow> rows;
  for (std::size_t s = 0; s + 1 < snapshots.size(); ++s) {
    const Field& a = snapshots[s];
    const Field& b = snapshots[s + 1];
    if (!(a.t > 0.0)) continue;
    const double dt = b.t - a.t;
    const double scale = a.sup() / a.t;
    if (!(scale > 0.0)) continue;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      const double q = (b.values[k] - a.values[k]) / dt + a.values[k] / ((m - 1.0) * a.t);
      lowest = std::min(lowest, q / scale);
    }
    statistic = std::min(statistic, lowest);
    tolerance = std::max(tolerance, 0.5 * dt / a.t + 1e-12);
    rows.push_back({a.t, lowest, 0.0, -lowest});
  }
  if (rows.empty()) throw std::invalid_argument("check_ab_time: no snapshot pair with t > 0 and nonzero data");
  auto params = base_params(snapshots.front(), m);
  params["t_first"] = snapshots.front().t;
  params["t_last"] = snapshots.back().t;
  auto report = make_report("ab_time", BoundKind::Lower, statistic, 0.0, tolerance, std::move(params));
  report.series = std::move(rows);
  return report;
}

PressureResidual pressure_residual(const Field& field, double m, double threshold, int margin_cells) {
  if (!(m > 1.0)) throw std::invalid_argument("pressure_residual: m must be > 1");
  if (!(field.t > 0.0)) throw std::invalid_argument("pressure_residual: t must be positive");
  const Grid& g = field.grid;
  const int n = g.dim();
  std::vector<double> p(field.values.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = m / (m - 1.0) * std::pow(field.values[k], m - 1.0);
  const auto mask = positivity_set(field, threshold);
  const auto dist = interface_distance(mask, margin_cells + 1);
  const double rhs = n / ((n * (m - 1.0) + 2.0) * field.t);
  PressureResidual out;
  out.min_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (dist[k] < margin_cells + 1 || g.on_edge(k)) continue;
    const double r = laplacian_at(g, p, k) + rhs;
    out.min_residual = std::min(out.min_residual, r);
    out.max_abs_residual = std::max(out.max_abs_residual, std::abs(r));
    ++out.cells;
  }
  if (out.cells == 0) out.min_residual = 0.0;
  return out;
}

CheckReport check_ab_pressure(const Field& field, double m, double threshold, std::optional<double> tolerance,
                              int margin_cells) {
  const auto res = pressure_residual(field, m, threshold, margin_cells);
  const double dx = field.grid.spacing();
  auto params = base_params(field, m);
  params["t"] = field.t;
  params["interior_cells"] = static_cast<double>(res.cells);
  params["max_abs_residual"] = res.max_abs_residual;
  auto report = make_report("ab_pressure", BoundKind::Lower, res.min_residual, 0.0, tolerance.value_or(5.0 * dx * dx),
                            std::move(params));
  report.series.push_back({field.t, res.min_residual, 0.0, -res.min_residual});
  return report;
}

CheckReport check_gradient_bound(const std::vector<Field>& snapshots, double m, double h, double M) {
  require_snapshots(snapshots, 1, "check_gradient_bound");
  const double c1 = gradient_bound_constant(m, h, M);
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (const Field& f : snapshots) {
    if (!(f.t > 0.0)) throw std::invalid_argument("check_gradient_bound: snapshot times must be positive");
    std::vector<double> uh(f.values.size());
    for (std::size_t k = 0; k < uh.size(); ++k) uh[k] = std::pow(f.values[k], h);
    const auto grad = gradient(f.grid, uh);
    double worst = 0.0;
    for (const auto& gk : grad) worst = std::max(worst, gk[0] * gk[0] + gk[1] * gk[1]);
    const double s = worst * c1 * f.t;
    statistic = std::max(statistic, s);
    rows.push_back({f.t, s, 1.0, 1.0 - s});
  }
  auto params = base_params(snapshots.front(), m);
  params["h"] = h;
  params["M"] = M;
  params["C1"] = c1;
  auto report = make_report("gradient_bound", BoundKind::Upper, statistic, 1.0, snapshots.front().grid.spacing(),
                            std::move(params));
  report.series = std::move(rows);
  return report;
}

HolderEstimate holder_quotient(const std::vector<Field>& snapshots, double h, double tau, double K, std::uint64_t seed,
                               std::size_t min_pairs) {
  if (!(h > 0.0)) throw std::invalid_argument("holder_quotient: h must be positive");
  HolderEstimate est;
  est.h = h;
  std::vector<const Field*> used;
  for (const Field& f : snapshots) {
    if (f.t >= tau) used.push_back(&f);
  }
  if (used.empty()) return est;
  const Grid& g = used.front()->grid;
  est.dx = g.spacing();
  std::vector<std::size_t> cells;
  std::vector<char> inside(g.size(), 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.radius(k) <= K) {
      cells.push_back(k);
      inside[k] = 1;
    }
  }
  if (cells.empty()) return est;
  const double inv_h = 1.0 / h;
  const double inv_2h = 0.5 / h;
  auto consider = [&](const Field& a, std::size_t ka, const Field& b, std::size_t kb) {
    const auto pa = g.position(ka);
    const auto pb = g.position(kb);
    const double dist = std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
    const double denom = std::pow(dist, inv_h) + std::pow(std::abs(a.t - b.t), inv_2h);
    ++est.sample_count;
    if (denom == 0.0) return;
    est.nu_hat = std::max(est.nu_hat, std::abs(a.values[ka] - b.values[kb]) / denom);
  };
  for (std::size_t s = 0; s < used.size(); ++s) {
    for (std::size_t k : cells) {
      for (std::size_t nb : neighbours(g, k)) {
        if (nb > k && inside[nb]) consider(*used[s], k, *used[s], nb);
      }
      if (s + 1 < used.size()) consider(*used[s], k, *used[s + 1], k);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_snap(0, used.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_cell(0, cells.size() - 1);
  while (est.sample_count < min_pairs) {
    const std::size_t s1 = pick_snap(rng);
    const std::size_t s2 = pick_snap(rng);
    const std::size_t c1 = pick_cell(rng);
    const std::size_t c2 = pick_cell(rng);
    consider(*used[s1], cells[c1], *used[s2], cells[c2]);
  }
  return est;
}

CheckReport check_holder_refinement(const std::vector<HolderEstimate>& levels) {
  if (levels.size() < 2) throw std::invalid_argument("check_holder_refinement: needs at least two grid levels");
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double a = levels[i].nu_hat;
    const double b = levels[i + 1].nu_hat;
    const double change = a > 0.0 ? std::abs(b - a) / a : (b > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    statistic = std::max(statistic, change);
    // The flat table keys refinement levels by dx in place of time.
    rows.push_back({levels[i + 1].dx, change, 0.2, 0.2 - change});
  }
  std::map<std::string, double> params{{"h", levels.front().h},
                                       {"levels", static_cast<double>(levels.size())},
                                       {"nu_hat_coarse", levels.front().nu_hat},
                                       {"nu_hat_fine", levels.back().nu_hat}};
  std::size_t samples = 0;
  for (const auto& l : levels) samples += l.sample_count;
  params["sample_count"] = static_cast<double>(samples);
  auto report = make_report("holder_modulus", BoundKind::Upper, statistic, 0.2, 0.0, std::move(params));
  report.series = std::move(rows);
  return report;
}

CheckReport check_decay(const std::vector<Field>& snapshots, double m) {
  if (!(m >= 1.0)) throw std::invalid_argument("check_decay: m must be >= 1");
  std::vector<const Field*> used;
  for (const Field& f : snapshots) {
    if (f.t > 0.0) used.push_back(&f);
  }
  if (used.size() < 2) throw std::invalid_argument("check_decay: needs two snapshots with t > 0");
  const int n = used.front()->grid.dim();
  const double rate = n / (n * (m - 1.0) + 2.0);
  const double c3 = used.front()->sup() * std::pow(used.front()->t, rate);
  const double bound = 1.05 * c3;
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (const Field* f : used) {
    const double s = f->sup() * std::pow(f->t, rate);
    statistic = std::max(statistic, s);
    rows.push_back({f->t, s, bound, bound - s});
  }
  auto params = base_params(*used.front(), m);
  params["C3"] = c3;
  params["rate"] = rate;
  auto report = make_report("decay", BoundKind::Upper, statistic, bound, 0.0, std::move(params));
  report.series = std::move(rows);
  return report;
}

CheckReport check_propagation(const std::vector<Field>& snapshots, double m, double mass, double threshold) {
  require_snapshots(snapshots, 1, "check_propagation");
  const int n = snapshots.front().grid.dim();
  double statistic = std::numeric_limits<double>::infinity();
  std::vector<SeriesRow> rows;
  for (const Field& f : snapshots) {
    if (!(f.t > 0.0)) continue;
    const double radius = support_radius_numeric(positivity_set(f, threshold)).radius;
    const double chi = chi_lower_bound(f.t, m, n, mass);
    const double gap = radius - chi;
    statistic = std::min(statistic, gap);
    rows.push_back({f.t, gap, 0.0, -gap});
  }
  if (rows.empty()) throw std::invalid_argument("check_propagation: no snapshot with t > 0");
  auto params = base_params(snapshots.front(), m);
  params["mass"] = mass;
  params["threshold"] = threshold;
  auto report = make_report("propagation", BoundKind::Lower, statistic, 0.0, snapshots.front().grid.spacing(),
                            std::move(params));
  report.series = std::move(rows);
  return report;
}

HeatDistance l2_distance_heat(double m, double k, const PMEProblem& shared, const Grid& grid,
                              const SchemeConfig& config) {
  if (!(m >= 1.0)) throw std::invalid_argument("l2_distance_heat: m must be >= 1");
  if (!(k > 0.0)) throw std::invalid_argument("l2_distance_heat: k must be positive");
  const Trajectory heat = solve_heat(shared, grid, config);
  PMEProblem nonlinear = shared;
  nonlinear.m = m;
  const Trajectory pme = m == 1.0 ? heat : solve_pme(nonlinear, grid, config);
  HeatDistance out;
  out.m = m;
  out.k = k;
  for (std::size_t s = 0; s < heat.snapshots.size(); ++s) {
    const Field& v = heat.snapshots[s];
    const Field& u = pme.snapshots[s];
    if (!(v.t > 0.0)) continue;
    double sum = 0.0;
    for (std::size_t c = 0; c < v.values.size(); ++c) {
      if (grid.radius(c) > k) continue;
      const double d = v.values[c] - u.values[c];
      sum += d * d;
    }
    sum *= grid.cell_volume();
    out.series.emplace_back(v.t, sum);
    out.statistic = std::max(out.statistic, sum);
  }
  return out;
}

std::vector<CheckReport> heat_closeness_reports(const std::vector<HeatDistance>& runs) {
  if (runs.empty()) throw std::invalid_argument("heat_closeness_reports: no runs");
  std::vector<CheckReport> reports;
  double c_star = 0.0;
  for (const auto& r : runs) c_star = std::max(c_star, r.statistic / ((r.m - 1.0) + 1.0 / r.k));
  for (const auto& r : runs) {
    const double bracket = (r.m - 1.0) + 1.0 / r.k;
    auto rep = make_report("l2_heat", BoundKind::Upper, r.statistic, c_star * bracket, 0.0,
                           {{"m", r.m}, {"k", r.k}, {"C_star", c_star}});
    for (const auto& [t, s] : r.series) rep.series.push_back({t, s, c_star * bracket, c_star * bracket - s});
    reports.push_back(std::move(rep));
  }

  std::map<double, std::vector<const HeatDistance*>> by_k;
  for (const auto& r : runs) by_k[r.k].push_back(&r);
  for (auto& [k, group] : by_k) {
    if (group.size() < 2) continue;
    std::sort(group.begin(), group.end(), [](const auto* a, const auto* b) { return a->m > b->m; });
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<SeriesRow> rows;
    for (std::size_t i = 0; i + 1 < group.size(); ++i) {
      const double step = group[i + 1]->statistic - group[i]->statistic;
      worst = std::max(worst, step);
      // Rows are keyed by the smaller m of each consecutive pair.
      rows.push_back({group[i + 1]->m, step, 0.0, -step});
    }
    auto rep = make_report("l2_heat_trend", BoundKind::Upper, worst, 0.0, 0.0,
                           {{"k", k}, {"runs", static_cast<double>(group.size())}});
    rep.series = std::move(rows);
    reports.push_back(std::move(rep));
  }

  if (runs.size() >= 3) {
    Eigen::MatrixXd A(runs.size(), 3);
    Eigen::VectorXd y(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
      A(i, 0) = runs[i].m - 1.0;
      A(i, 1) = 1.0 / runs[i].k;
      A(i, 2) = 1.0;
      y(i) = runs[i].statistic;
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    const double rms_resid = std::sqrt((A * coef - y).squaredNorm() / runs.size());
    const double rms_data = std::sqrt(y.squaredNorm() / runs.size());
    const double rel = rms_data > 0.0 ? rms_resid / rms_data : 0.0;
    reports.push_back(make_report("l2_heat_fit", BoundKind::Upper, rel, 0.25, 0.0,
                                  {{"a", coef(0)}, {"b", coef(1)}, {"c", coef(2)}, {"runs", static_cast<double>(runs.size())}}));
  }
  return reports;
}

CheckReport check_persistence(const std::vector<Field>& snapshots, double threshold) {
  require_snapshots(snapshots, 2, "check_persistence");
  const auto result = persistence_check(snapshots, threshold);
  std::vector<SeriesRow> rows;
  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    double lost = 0.0;
    for (const auto& v : result.violations) {
      if (v.t_lost == snapshots[s].t) lost += 1.0;
    }
    rows.push_back({snapshots[s].t, lost, 0.0, -lost});
  }
  auto params = grid_params(snapshots.front());
  params["threshold"] = threshold;
  auto report = make_report("persistence", BoundKind::Upper, static_cast<double>(result.violations.size()), 0.0, 0.0,
                            std::move(params));
  report.series = std::move(rows);
  return report;
}

CheckReport check_tangency_refinement(const std::vector<std::vector<Field>>& levels, double beta, double h,
                                      double threshold) {
  if (levels.size() < 2) throw std::invalid_argument("check_tangency_refinement: needs at least two grid levels");
  if (!(beta > h)) throw std::invalid_argument("check_tangency_refinement: beta must exceed h");
  const std::size_t count = levels.front().size();
  for (const auto& l : levels) {
    if (l.size() != count || count == 0) {
      throw std::invalid_argument("check_tangency_refinement: levels must hold the same nonempty snapshot times");
    }
  }
  const double bound = 1.0 / 1.8;
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
      const Field& coarse = levels[j][i];
      const Field& fine = levels[j + 1][i];
      const double gc = tangency_profile(coarse, beta, positivity_set(coarse, threshold), h).max_gradient;
      const double gf = tangency_profile(fine, beta, positivity_set(fine, threshold), h).max_gradient;
      const double ratio = gc > 0.0 ? gf / gc : (gf > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      worst = std::max(worst, ratio);
    }
    statistic = std::max(statistic, worst);
    rows.push_back({levels.front()[i].t, worst, bound, bound - worst});
  }
  auto params = grid_params(levels.front().front());
  params["beta"] = beta;
  params["h"] = h;
  params["levels"] = static_cast<double>(levels.size());
  auto report = make_report("tangency", BoundKind::Upper, statistic, bound, 0.0, std::move(params));
  report.series = std::move(rows);
  return report;
}

CheckReport check_continuation(const ContinuationResult& result) {
  if (result.differences.size() < 2) {
    throw std::invalid_argument("check_continuation: needs at least three eta values");
  }
  double statistic = 0.0;
  std::vector<SeriesRow> rows;
  for (std::size_t j = 0; j + 1 < result.differences.size(); ++j) {
    const double a = result.differences[j];
    const double ratio = a > 0.0 ? result.differences[j + 1] / a : std::numeric_limits<double>::infinity();
    statistic = std::max(statistic, ratio);
    // Keyed by η in place of time.
    rows.push_back({result.etas[j + 1], ratio, 1.0, 1.0 - ratio});
  }
  const Trajectory& fine = result.finest();
  auto params = base_params(fine.snapshots.front(), fine.m);
  params["eta_first"] = result.etas.front();
  params["eta_last"] = result.etas.back();
  auto report = make_report("continuation", BoundKind::Upper, statistic, 1.0, 0.0, std::move(params));
  report.series = std::move(rows);
  return report;
}

}  // namespace pmelab
