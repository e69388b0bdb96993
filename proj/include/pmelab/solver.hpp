#pragma once

// Explicit conservative finite-difference solver for u_t = Δ(u^m) on a
// truncated domain, with initial data u0 + η.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pmelab/analytic.hpp"
#include "pmelab/field.hpp"

namespace pmelab {

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContinuationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Boundary { ZeroFlux, ZeroValue };

struct SchemeConfig {
  double cfl_safety = 0.9;
  Boundary boundary = Boundary::ZeroFlux;
  std::optional<double> dt_override;
  /// Abort when an edge value exceeds η + boundary_tolerance * M.
  double boundary_tolerance = 1e-12;
  /// Off only for deliberately truncated runs (e.g. mass-leak controls).
  bool monitor_domain = true;
};

/// B(x, t + offset; C), sampled at the problem start time.
struct BarenblattInitial {
  double C = 1.0 / 12.0;
  double offset = 1.0;
};

/// amplitude * exp(-|x|^2 / (2 sigma^2)).
struct GaussianInitial {
  double amplitude = 1.0;
  double sigma = 1.0;
};

/// amplitude * (1 - |x|^2 / radius^2)_+^2.
struct BumpInitial {
  double amplitude = 1.0;
  double radius = 1.0;
};

/// Values read from a field table; the grid must match the run grid.
struct FileInitial {
  Field data;
};

using InitialCondition = std::variant<BarenblattInitial, GaussianInitial, BumpInitial, FileInitial>;

struct PMEProblem {
  double m = 2.0;
  double eta = 0.0;
  InitialCondition initial = BarenblattInitial{};
  /// Declared sup of u0; 0 means "take it from the sampled data".
  double M = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  /// Strictly increasing times in [t0, t1]; empty means {t1}.
  std::vector<double> snapshot_times;
};

struct RunDiagnostics {
  double dt = 0.0;
  long steps = 0;
  double initial_mass = 0.0;
  double max_relative_mass_drift = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double max_boundary_excess = 0.0;
  double M = 0.0;
};

struct Trajectory {
  std::vector<Field> snapshots;
  RunDiagnostics diagnostics;
  double m = 1.0;
  double eta = 0.0;
};

Field build_initial(const PMEProblem& problem, const Grid& grid);

/// cfl_safety * dx^2 / (2 n m (M + η)^{m-1}), or the override if it respects that bound.
double stable_timestep(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config);

/// One explicit step of the flux-form stencil u += dt/dx^2 Σ_axis (w+ - 2w + w-), w = u^m.
Field step(const Field& field, double m, double dt, const SchemeConfig& config);

/// Predicted outer support radius at t1 for compactly supported data, used to
/// reject runs whose support would reach the domain edge.
double predicted_support_radius(const PMEProblem& problem, const Field& initial);

Trajectory solve_pme(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config = {});

/// Linear heat equation with the same data; equivalent to solve_pme with m = 1.
Trajectory solve_heat(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config = {});

struct ContinuationResult {
  std::vector<double> etas;
  std::vector<Trajectory> runs;
  /// ||u_{η_j} - u_{η_{j+1}}||_{L1} at t1.
  std::vector<double> differences;
  const Trajectory& finest() const { return runs.back(); }
};

ContinuationResult eta_continuation(const PMEProblem& problem, const Grid& grid, const SchemeConfig& config,
                                    const std::vector<double>& etas);

/// η_0, η_0/2, ..., count entries.
std::vector<double> halving_sequence(double eta0, int count);

}  // namespace pmelab
