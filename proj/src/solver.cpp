#include "pmelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pmelab {

namespace {

double initial_value(const InitialCondition& ic, const PMEProblem& problem, const Grid& grid, std::size_t k) {
  const double r = grid.radius(k);
  return std::visit(
      [&](const auto& init) -> double {
        using T = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<T, BarenblattInitial>) {
          return barenblatt_eval_radial(r, problem.t0, {problem.m, grid.dim(), init.C, init.offset});
        } else if constexpr (std::is_same_v<T, GaussianInitial>) {
          return init.amplitude * std::exp(-0.5 * r * r / (init.sigma * init.sigma));
        } else if constexpr (std::is_same_v<T, BumpInitial>) {
          const double s = 1.0 - r * r / (init.radius * init.radius);
          return s > 0.0 ? init.amplitude * s * s : 0.0;
        } else {
          return init.data.values[k];
        }
      },
      ic);
}

// Sup of u0 as used by the stability bound and the maximum principle.
double data_bound(const PMEProblem& problem, const Field& initial) {
  return problem.M > 0.0 ? problem.M : initial.sup() - problem.eta;
}

double power(double u, double m) {
  if (m == 1.0) return u;
  if (m == 2.0) return u * u;
  return std::pow(u, m);
}

// Flux-form update on a flat buffer. Ghost values mirror the edge cell for
// zero-flux boundaries, so the interior fluxes telescope.
void advance(const Grid& grid, std::span<const double> u, std::span<double> out, std::vector<double>& w, double m,
             double dt, Boundary boundary) {
  const std::size_t size = grid.size();
  w.resize(size);
  for (std::size_t k = 0; k < size; ++k) w[k] = power(u[k], m);
  const int n = grid.points();
  const int last = n - 1;
  const double r = dt / (grid.spacing() * grid.spacing());
  const bool mirror = boundary == Boundary::ZeroFlux;
  auto ghost = [&](std::size_t edge) { return mirror ? w[edge] : 0.0; };
  auto check = [&](std::size_t k, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "explicit step produced " << v << " at index " << k << " (time step above the stability bound?)";
      throw InstabilityError(msg.str());
    }
  };
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const double left = i > 0 ? w[i - 1] : ghost(i);
      const double right = i < last ? w[i + 1] : ghost(i);
      const double v = u[i] + r * (left - 2.0 * w[i] + right);
      check(i, v);
      out[i] = v;
    }
    return;
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t k = grid.flatten(i, j);
      const double left = i > 0 ? w[k - 1] : ghost(k);
      const double right = i < last ? w[k + 1] : ghost(k);
      const double down = j > 0 ? w[k - n] : ghost(k);
      const double up = j < last ? w[k + n] : ghost(k);
      const double v = u[k] + r * ((left - 2.0 * w[k] + right) + (down - 2.0 * w[k] + up));
      check(k, v);
      out[k] = v;
    }
  }
}

double edge_excess(const Grid& grid, std::span<const double> u, double eta) {
  double excess = 0.0;
  const int n = grid.points();
  auto visit = [&](std::size_t k) { excess = std::max(excess, u[k] - eta); };
  if (grid.dim() == 1) {
    visit(0);
    visit(n - 1);
    return excess;
  }
  for (int a = 0; a < n; ++a) {
    visit(grid.flatten(a, 0));
    visit(grid.flatten(a, n - 1));
    visit(grid.flatten(0, a));
    visit(grid.flatten(n - 1, a));
  }
  return excess;
}

std::vector<double> resolved_snapshots(const PMEProblem& problem) {
  if (!(problem.t1 > problem.t0) || !(problem.t0 >= 0.0)) {
    throw std::invalid_argument("problem times must satisfy t1 > t0 >= 0");
  }
  std::vector<double> times = problem.snapshot_times.empty() ? std::vector<double>{problem.t1} : problem.snapshot_times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < problem.t0 || times[i] > problem.t1) {
      throw std::invalid_argument("snapshot time outside [t0, t1]");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("snapshot times must be strictly increasing");
  }
  return times;
}

Trajectory run(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config) {
  const std::vector<double> times = resolved_snapshots(problem);
  Field current = build_initial(problem, grid);
  const double M = data_bound(problem, current);
  const double dt = stable_timestep(problem, grid, config);

  if (config.monitor_domain && problem.m > 1.0 && problem.eta == 0.0) {
    const double predicted = predicted_support_radius(problem, current);
    if (predicted >= grid.half_width()) {
      std::ostringstream msg;
      msg << "domain too small: predicted support radius " << predicted << " at t1 = " << problem.t1
          << " reaches the half width " << grid.half_width();
      throw DomainTooSmallError(msg.str());
    }
  }

  Trajectory traj;
  traj.m = problem.m;
  traj.eta = problem.eta;
  RunDiagnostics& diag = traj.diagnostics;
  diag.dt = dt;
  diag.M = M;
  diag.initial_mass = current.mass();
  diag.min_value = current.inf();
  diag.max_value = current.sup();

  const double boundary_limit = config.boundary_tolerance * M;
  std::vector<double> next(grid.size());
  std::vector<double> work;
  std::size_t snap = 0;
  while (snap < times.size() && times[snap] <= current.t) traj.snapshots.push_back(current), ++snap;

  while (snap < times.size()) {
    const double target = times[snap];
    double h = dt;
    bool lands = false;
    if (current.t + h >= target * (1.0 - 1e-14)) {
      h = target - current.t;
      lands = true;
    }
    advance(grid, current.values, next, work, problem.m, h, config.boundary);
    current.values.swap(next);
    current.t = lands ? target : current.t + h;
    ++diag.steps;

    double total = 0.0;
    double lo = current.values.front();
    double hi = lo;
    for (double v : current.values) {
      total += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    diag.max_relative_mass_drift =
        std::max(diag.max_relative_mass_drift, std::abs(total * grid.cell_volume() - diag.initial_mass) / diag.initial_mass);
    diag.min_value = std::min(diag.min_value, lo);
    diag.max_value = std::max(diag.max_value, hi);

    const double excess = edge_excess(grid, current.values, problem.eta);
    diag.max_boundary_excess = std::max(diag.max_boundary_excess, excess);
    if (config.monitor_domain && excess > boundary_limit) {
      std::ostringstream msg;
      msg << "domain too small: edge value exceeds the background by " << excess << " at t = " << current.t;
      throw DomainTooSmallError(msg.str());
    }
    if (lands) traj.snapshots.push_back(current), ++snap;
  }
  return traj;
}

}  // namespace

Field build_initial(const PMEProblem& problem, const Grid& grid) {
  if (!(problem.m >= 1.0)) throw std::invalid_argument("exponent m must be >= 1");
  if (!(problem.eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
  if (const auto* file = std::get_if<FileInitial>(&problem.initial); file && !(file->data.grid == grid)) {
    throw std::invalid_argument("initial data file grid does not match the run grid");
  }
  if (std::holds_alternative<BarenblattInitial>(problem.initial) && !(problem.m > 1.0)) {
    throw std::invalid_argument("Barenblatt initial data needs m > 1");
  }
  Field f(grid, problem.t0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = initial_value(problem.initial, problem, grid, k);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "initial data must be finite and nonnegative; sample " << k << " is " << v;
      throw std::invalid_argument(msg.str());
    }
    if (problem.M > 0.0 && v > problem.M * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "initial data exceeds the declared bound M = " << problem.M << " (sample " << k << " is " << v << ")";
      throw std::invalid_argument(msg.str());
    }
    f.values[k] = v;
  }
  if (!(f.mass() > 0.0)) throw std::invalid_argument("initial data has zero mass");
  for (double& v : f.values) v += problem.eta;
  return f;
}

double stable_timestep(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config) {
  if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 1.0)) {
    throw std::invalid_argument("cfl_safety must lie in (0, 1]");
  }
  double M = problem.M;
  if (!(M > 0.0)) M = build_initial(problem, grid).sup() - problem.eta;
  const double diffusivity = problem.m * std::pow(M + problem.eta, problem.m - 1.0);
  const double dx = grid.spacing();
  const double bound = config.cfl_safety * dx * dx / (2.0 * grid.dim() * diffusivity);
  if (config.dt_override) {
    if (!(*config.dt_override > 0.0) || *config.dt_override > bound) {
      std::ostringstream msg;
      msg << "dt_override " << *config.dt_override << " exceeds the stability bound " << bound;
      throw std::invalid_argument(msg.str());
    }
    return *config.dt_override;
  }
  return bound;
}

Field step(const Field& field, double m, double dt, const SchemeConfig& config) {
  Field out(field.grid, field.t + dt);
  std::vector<double> work;
  advance(field.grid, field.values, out.values, work, m, dt, config.boundary);
  return out;
}

double predicted_support_radius(const PMEProblem& problem, const Field& initial) {
  const double M = data_bound(problem, initial);
  const double threshold = 1e-10 * M;
  double r0 = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < initial.values.size(); ++k) {
    const double v = initial.values[k] - problem.eta;
    mass += v;
    if (v > threshold) r0 = std::max(r0, initial.grid.radius(k));
  }
  mass *= initial.grid.cell_volume();
  const int n = initial.grid.dim();
  const BarenblattSpec point_source{problem.m, n, barenblatt_constant_for_mass(problem.m, n, mass), 0.0};
  return r0 + barenblatt_support_radius(problem.t1 - problem.t0, point_source);
}

Trajectory solve_pme(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config) {
  return run(problem, grid, config);
}

Trajectory solve_heat(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config) {
  PMEProblem linear = problem;
  linear.m = 1.0;
  return run(linear, grid, config);
}

ContinuationResult eta_continuation(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config,
                                    const std::vector<double>& etas) {
  if (etas.empty()) throw std::invalid_argument("eta_continuation: empty eta sequence");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) throw std::invalid_argument("eta_continuation: etas must be positive");
    if (i > 0 && !(etas[i] < etas[i - 1])) throw std::invalid_argument("eta_continuation: etas must be strictly decreasing");
  }
  ContinuationResult result;
  result.etas = etas;
  for (double eta : etas) {
    PMEProblem p = problem;
    p.eta = eta;
    result.runs.push_back(run(p, grid, config));
  }
  for (std::size_t j = 0; j + 1 < result.runs.size(); ++j) {
    result.differences.push_back(l1_distance(result.runs[j].snapshots.back(), result.runs[j + 1].snapshots.back()));
  }
  for (std::size_t j = 0; j + 1 < result.differences.size(); ++j) {
    if (!(result.differences[j + 1] < result.differences[j])) {
      std::ostringstream msg;
      msg << "eta continuation not converging: difference " << result.differences[j + 1] << " after "
          << result.differences[j];
      throw ContinuationError(msg.str());
    }
  }
  return result;
}

std::vector<double> halving_sequence(double eta0, int count) {
  std::vector<double> out;
  double eta = eta0;
  for (int i = 0; i < count; ++i, eta *= 0.5) out.push_back(eta);
  return out;
}

}  // namespace pmelab
