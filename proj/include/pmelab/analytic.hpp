#pragma once

// Closed-form reference objects for u_t = Δ(u^m): the Barenblatt source
// solution, the exact heat-equation solution of sampled data, the
// finite-propagation lower bound χ(t) and the Hölder/gradient constants.

#include <optional>
#include <span>

#include "pmelab/field.hpp"

namespace pmelab {

/// Self-similarity exponents of the source solution.
struct SelfSimilarParams {
  double lambda;
  double mu;
  double kappa;
};

SelfSimilarParams barenblatt_constants(double m, int n);

/// B(x, t + t0; C). The offset t0 keeps runs away from the point-source singularity.
struct BarenblattSpec {
  double m = 2.0;
  int n = 1;
  double C = 1.0 / 12.0;
  double t0 = 1.0;
};

double barenblatt_eval(std::span<const double> x, double t, const BarenblattSpec& spec);
double barenblatt_eval_radial(double r, double t, const BarenblattSpec& spec);

/// Total mass, by adaptive quadrature over the support ball at time t.
/// Independent of t; the default evaluates at t = 0 (i.e. at time t0).
double barenblatt_mass(const BarenblattSpec& spec, double t = 0.0);

/// Profile constant C giving the requested mass. Mass scales as C^{1/(m-1)+n/2}.
double barenblatt_constant_for_mass(double m, int n, double mass);

double barenblatt_support_radius(double t, const BarenblattSpec& spec);

/// Samples B(., t) onto a grid; the field is labelled with time t.
Field barenblatt_field(const Grid& grid, double t, const BarenblattSpec& spec);

/// Lower bound on the outer radius of the positivity set for data of the
/// given mass supported in a ball.
double chi_lower_bound(double t, double m, int n, double mass);

struct HolderSpec {
  double m;
  double h;
  double inv_h;
  double inv_2h;
};

/// h = 1 for 1 < m < 2; for m >= 2, h must lie in (m-1, m) and defaults to m - 1/2.
HolderSpec holder_exponent_rule(double m, std::optional<double> choice = std::nullopt);

/// C1 = 2m |(q-1)(q-1-q/m)| M^{m - 2m/q - 1} with q = m/h.
double gradient_bound_constant(double m, double h, double M);

/// Solution of v_t = Δv at time t for initial data given by the piecewise
/// (bi)linear interpolant of `initial`. Uses the (4πt)^{-n/2} kernel; each
/// interpolation hat is convolved with the kernel in closed form.
double heat_exact_eval(std::span<const double> x, double t, const Field& initial);

/// heat_exact_eval on every point of `target`, exploiting separability.
Field heat_exact_field(const Field& initial, double t, const Grid& target);

}  // namespace pmelab
