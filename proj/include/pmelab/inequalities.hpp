#pragma once

// Property kit for two elementary inequalities used by the regularity theory:
// |a - b|^β <= |a^β - b^β| for a, b >= 0, β > 1, and the Poincaré inequality
// ||u||_{L2(B_ρ)} <= ρ ||∇u||_{L2(B_ρ)} for u vanishing on the sphere.

#include <array>
#include <cstdint>
#include <functional>

namespace pmelab {

struct PowDiffResult {
  double lhs;
  double rhs;
  bool holds;
};

/// Rejects β <= 1, where the inequality is not claimed.
PowDiffResult pow_diff_holds(double a, double b, double beta);

struct PowDiffSweep {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  /// Cases with a != b and both positive where lhs == rhs.
  std::uint64_t interior_equalities = 0;
};

/// Seeded sweep over a, b in [0, 10] and β in (1, 8].
PowDiffSweep pow_diff_sweep(std::uint64_t cases, std::uint64_t seed);

enum class TestFunctionKind { PolynomialBump, CosineBump, RandomSmooth, Custom };

struct TestFunctionSpec {
  TestFunctionKind kind = TestFunctionKind::PolynomialBump;
  double rho = 1.0;
  int n = 1;
  /// Quadrature nodes per axis (radial and angular in 2D).
  int samples = 1000;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  /// Custom kind only: value and gradient on the ball.
  std::function<double(std::array<double, 2>)> value;
  std::function<std::array<double, 2>(std::array<double, 2>)> grad;
};

struct PoincareResult {
  double l2_norm;
  double grad_norm;
  double ratio;
  bool holds;
};

/// Quadrature on (-ρ, ρ) in 1D (composite 5-point Gauss-Legendre) or on the
/// disc in polar coordinates. holds = ratio <= ρ (1 + 1e-3). Throws if the
/// function does not vanish on the sphere.
PoincareResult poincare_ratio(const TestFunctionSpec& spec);

}  // namespace pmelab
