#include "pmelab/analytic.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pmelab {

namespace {

void require_degenerate(double m, const char* where) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw std::invalid_argument(std::string(where) + ": exponent m must be > 1, got " + std::to_string(m));
  }
}

void require_dimension(int n, const char* where) {
  if (n < 1) throw std::invalid_argument(std::string(where) + ": dimension must be >= 1");
}

// Surface measure of the unit sphere in R^n (2 for n = 1).
double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double profile(double r, double that, const BarenblattSpec& spec, const SelfSimilarParams& p) {
  const double inner = spec.C - p.kappa * r * r / std::pow(that, 2.0 * p.mu);
  if (inner <= 0.0) return 0.0;
  return std::pow(that, -p.lambda) * std::pow(inner, 1.0 / (spec.m - 1.0));
}

double shifted_time(double t, const BarenblattSpec& spec) {
  const double that = t + spec.t0;
  if (!(that > 0.0)) throw std::invalid_argument("barenblatt: t + t0 must be positive");
  return that;
}

// ∫ hat(ξ) g_s(x - ξ) dξ for the unit hat centred at c with half-width dx,
// g_s the centred normal density with standard deviation s.
double hat_response(double x, double c, double dx, double s) {
  const double a = c - dx - x;
  const double mid = c - x;
  const double b = c + dx - x;
  if (a > 40.0 * s || b < -40.0 * s) return 0.0;
  const double inv_sqrt2s = 1.0 / (std::numbers::sqrt2 * s);
  // Φ(q/s) - Φ(p/s), evaluated on the tail where erfc keeps relative accuracy.
  auto cdf_diff = [&](double p, double q) {
    if (q <= 0.0) return 0.5 * (std::erfc(-q * inv_sqrt2s) - std::erfc(-p * inv_sqrt2s));
    return 0.5 * (std::erfc(p * inv_sqrt2s) - std::erfc(q * inv_sqrt2s));
  };
  auto density = [&](double z) { return std::exp(-0.5 * (z / s) * (z / s)) / (s * std::sqrt(2.0 * std::numbers::pi)); };
  // ∫_p^q z g(z) dz = s^2 (g(p) - g(q))
  auto first_moment = [&](double p, double q) { return s * s * (density(p) - density(q)); };
  const double rising = first_moment(a, mid) - a * cdf_diff(a, mid);
  const double falling = b * cdf_diff(mid, b) - first_moment(mid, b);
  return (rising + falling) / dx;
}

}  // namespace

SelfSimilarParams barenblatt_constants(double m, int n) {
  require_degenerate(m, "barenblatt_constants");
  require_dimension(n, "barenblatt_constants");
  const double lambda = n / (n * (m - 1.0) + 2.0);
  return {lambda, lambda / n, lambda * (m - 1.0) / (2.0 * m * n)};
}

double barenblatt_eval_radial(double r, double t, const BarenblattSpec& spec) {
  const auto p = barenblatt_constants(spec.m, spec.n);
  return profile(r, shifted_time(t, spec), spec, p);
}

double barenblatt_eval(std::span<const double> x, double t, const BarenblattSpec& spec) {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  return barenblatt_eval_radial(std::sqrt(r2), t, spec);
}

double barenblatt_support_radius(double t, const BarenblattSpec& spec) {
  const auto p = barenblatt_constants(spec.m, spec.n);
  return std::pow(shifted_time(t, spec), p.mu) * std::sqrt(spec.C / p.kappa);
}

double barenblatt_mass(const BarenblattSpec& spec, double t) {
  if (!(spec.C > 0.0)) throw std::invalid_argument("barenblatt_mass: C must be positive");
  const auto p = barenblatt_constants(spec.m, spec.n);
  const double that = shifted_time(t, spec);
  const double radius = barenblatt_support_radius(t, spec);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double radial = integrator.integrate(
      [&](double r) { return profile(r, that, spec, p) * std::pow(r, spec.n - 1); }, 0.0, radius, 1e-14,
      &error, &l1);
  if (!(error <= 1e-10 * std::abs(radial))) {
    throw std::runtime_error("barenblatt_mass: quadrature did not reach relative tolerance 1e-10");
  }
  return sphere_area(spec.n) * radial;
}

double barenblatt_constant_for_mass(double m, int n, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("barenblatt_constant_for_mass: mass must be positive");
  const double unit_mass = barenblatt_mass({m, n, 1.0, 0.0}, 1.0);
  const double power = 1.0 / (m - 1.0) + 0.5 * n;
  return std::pow(mass / unit_mass, 1.0 / power);
}

Field barenblatt_field(const Grid& grid, double t, const BarenblattSpec& spec) {
  if (spec.n != grid.dim()) throw std::invalid_argument("barenblatt_field: spec dimension differs from grid");
  Field f(grid, t);
  for (std::size_t k = 0; k < grid.size(); ++k) f.values[k] = barenblatt_eval_radial(grid.radius(k), t, spec);
  return f;
}

double chi_lower_bound(double t, double m, int n, double mass) {
  require_degenerate(m, "chi_lower_bound");
  require_dimension(n, "chi_lower_bound");
  if (!(mass > 0.0)) throw std::invalid_argument("chi_lower_bound: initial mass must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("chi_lower_bound: t must be positive");
  const double base = (m - 1.0) * std::pow(std::numbers::pi, (1.0 - m) * n / 2.0) *
                      std::pow(std::tgamma(1.0 + 0.5 * n), m - 1.0) * std::pow(mass, m - 1.0) * t;
  return std::pow(base, 1.0 / (2.0 + (m - 1.0) * n));
}

HolderSpec holder_exponent_rule(double m, std::optional<double> choice) {
  require_degenerate(m, "holder_exponent_rule");
  double h = 1.0;
  if (m < 2.0) {
    if (choice && *choice != 1.0) {
      throw std::invalid_argument("holder_exponent_rule: h is fixed to 1 when 1 < m < 2");
    }
  } else if (choice) {
    if (!(*choice > m - 1.0 && *choice < m)) {
      throw std::invalid_argument("holder_exponent_rule: h must lie in the open interval (m-1, m)");
    }
    h = *choice;
  } else {
    h = m - 0.5;
  }
  return {m, h, 1.0 / h, 1.0 / (2.0 * h)};
}

double gradient_bound_constant(double m, double h, double M) {
  require_degenerate(m, "gradient_bound_constant");
  if (!(M > 0.0)) throw std::invalid_argument("gradient_bound_constant: M must be positive");
  const double q = m / h;
  if (!(q > 1.0 && q < m / (m - 1.0))) {
    throw std::invalid_argument("gradient_bound_constant: q = m/h must lie in (1, m/(m-1)), i.e. h in (m-1, m)");
  }
  return 2.0 * m * std::abs((q - 1.0) * (q - 1.0 - q / m)) * std::pow(M, m - 2.0 * m / q - 1.0);
}

double heat_exact_eval(std::span<const double> x, double t, const Field& initial) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_exact_eval: t must be positive");
  const Grid& g = initial.grid;
  if (static_cast<int>(x.size()) != g.dim()) throw std::invalid_argument("heat_exact_eval: point dimension mismatch");
  const double s = std::sqrt(2.0 * t);
  const double dx = g.spacing();
  std::vector<double> hx(g.points());
  for (int i = 0; i < g.points(); ++i) hx[i] = hat_response(x[0], g.coord(i), dx, s);
  if (g.dim() == 1) {
    double v = 0.0;
    for (int i = 0; i < g.points(); ++i) v += initial.values[i] * hx[i];
    return v;
  }
  double v = 0.0;
  for (int j = 0; j < g.points(); ++j) {
    const double hy = hat_response(x[1], g.coord(j), dx, s);
    if (hy == 0.0) continue;
    double row = 0.0;
    for (int i = 0; i < g.points(); ++i) row += initial.values[g.flatten(i, j)] * hx[i];
    v += row * hy;
  }
  return v;
}

Field heat_exact_field(const Field& initial, double t, const Grid& target) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_exact_field: t must be positive");
  const Grid& g = initial.grid;
  if (g.dim() != target.dim()) throw std::invalid_argument("heat_exact_field: dimension mismatch");
  const double s = std::sqrt(2.0 * t);
  const int ns = g.points();
  const int nt = target.points();
  // response[a * ns + i]: hat i of the source grid seen from target coordinate a.
  std::vector<double> response(static_cast<std::size_t>(nt) * ns);
  for (int a = 0; a < nt; ++a) {
    for (int i = 0; i < ns; ++i) response[static_cast<std::size_t>(a) * ns + i] = hat_response(target.coord(a), g.coord(i), g.spacing(), s);
  }
  Field out(target, t);
  if (g.dim() == 1) {
    for (int a = 0; a < nt; ++a) {
      double v = 0.0;
      for (int i = 0; i < ns; ++i) v += response[static_cast<std::size_t>(a) * ns + i] * initial.values[i];
      out.values[a] = v;
    }
    return out;
  }
  // Contract the x axis first: partial[j * nt + a] = sum_i R[a,i] u[i,j].
  std::vector<double> partial(static_cast<std::size_t>(ns) * nt, 0.0);
  for (int j = 0; j < ns; ++j) {
    for (int a = 0; a < nt; ++a) {
      double v = 0.0;
      for (int i = 0; i < ns; ++i) v += response[static_cast<std::size_t>(a) * ns + i] * initial.values[g.flatten(i, j)];
      partial[static_cast<std::size_t>(j) * nt + a] = v;
    }
  }
  for (int b = 0; b < nt; ++b) {
    for (int a = 0; a < nt; ++a) {
      double v = 0.0;
      for (int j = 0; j < ns; ++j) v += response[static_cast<std::size_t>(b) * ns + j] * partial[static_cast<std::size_t>(j) * nt + a];
      out.values[target.flatten(a, b)] = v;
    }
  }
  return out;
}

}  // namespace pmelab
