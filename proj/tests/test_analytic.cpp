#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pmelab/analytic.hpp"

using namespace pmelab;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on [a, b] with an even panel count.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

// Mass of the source solution via the Beta integral of the radial profile.
double beta_mass(double m, int n, double C) {
  const double lambda = n / (n * (m - 1.0) + 2.0);
  const double kappa = lambda * (m - 1.0) / (2.0 * m * n);
  const double a = 1.0 / (m - 1.0);
  return sphere_area(n) * std::pow(C, a + 0.5 * n) * std::pow(kappa, -0.5 * n) * 0.5 * std::beta(0.5 * n, a + 1.0);
}

}  // namespace

TEST_CASE("self-similar exponents") {
  auto p = barenblatt_constants(2.0, 1);
  CHECK(p.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.kappa == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  p = barenblatt_constants(3.0, 2);
  CHECK(p.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(p.kappa == doctest::Approx(1.0 / 18.0).epsilon(1e-15));

  p = barenblatt_constants(1.0001, 1);
  CHECK(p.lambda == doctest::Approx(1.0 / 2.0001).epsilon(1e-14));

  CHECK_THROWS_AS(barenblatt_constants(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(barenblatt_constants(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(barenblatt_constants(2.0, 0), std::invalid_argument);
}

TEST_CASE("exponent relations hold for random m and n") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mdist(1.001, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double m = mdist(rng);
    const int n = 1 + i % 3;
    const auto p = barenblatt_constants(m, n);
    CHECK(p.lambda > 0.0);
    CHECK(p.kappa > 0.0);
    CHECK(p.mu * n == doctest::Approx(p.lambda).epsilon(1e-14));
    CHECK(p.lambda * (n * (m - 1.0) + 2.0) == doctest::Approx(n).epsilon(1e-14));
  }
}

TEST_CASE("source solution point values") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  const double origin[] = {0.0};
  const double edge[] = {1.0};
  const double half[] = {0.5};
  CHECK(barenblatt_eval(origin, 1.0, spec) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(barenblatt_eval(edge, 1.0, spec) == 0.0);
  // Profile polynomial (C - x^2/12) evaluated directly.
  const double poly = 1.0 / 12.0 - 0.25 / 12.0;
  CHECK(barenblatt_eval(half, 1.0, spec) == doctest::Approx(poly).epsilon(1e-15));
  CHECK(barenblatt_eval(half, 1.0, spec) == doctest::Approx(0.0625).epsilon(1e-15));
  const double outside[] = {3.0};
  CHECK(barenblatt_eval(outside, 1.0, spec) == 0.0);
  CHECK_THROWS(barenblatt_eval(origin, 0.0, spec));
}

TEST_CASE("offset shifts the time argument") {
  const BarenblattSpec shifted{2.0, 1, 1.0 / 12.0, 1.0};
  const BarenblattSpec plain{2.0, 1, 1.0 / 12.0, 0.0};
  for (double x : {0.0, 0.3, 0.9, 1.2}) {
    const double p[] = {x};
    CHECK(barenblatt_eval(p, 1.0, shifted) == doctest::Approx(barenblatt_eval(p, 2.0, plain)).epsilon(1e-15));
  }
}

TEST_CASE("mass matches the hand-integrated closed form") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  const double closed = 8.0 * std::sqrt(3.0) / 3.0 * std::pow(1.0 / 12.0, 1.5);
  CHECK(closed == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(barenblatt_mass(spec, 1.0) - closed) < 1e-8);

  // Simpson on the support, independent of the library quadrature.
  const double sim = simpson([&](double x) { const double p[] = {x}; return barenblatt_eval(p, 1.0, spec); }, -1.0, 1.0, 2000);
  CHECK(sim == doctest::Approx(closed).epsilon(1e-10));

  const BarenblattSpec planar{2.0, 2, 0.2, 1.0};
  CHECK(barenblatt_mass(planar) == doctest::Approx(8.0 * kPi * 0.04).epsilon(1e-10));
}

TEST_CASE("mass is time invariant") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  const double m1 = barenblatt_mass(spec, 1.0);
  for (double t : {2.0, 10.0}) CHECK(std::abs(barenblatt_mass(spec, t) - m1) <= 1e-10 * m1);
}

TEST_CASE("mass agrees with the Beta-function oracle across m, n, C") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mdist(1.05, 5.0);
  std::uniform_real_distribution<double> cdist(0.01, 3.0);
  for (int i = 0; i < 60; ++i) {
    const double m = mdist(rng);
    const int n = 1 + i % 3;
    const double C = cdist(rng);
    const BarenblattSpec spec{m, n, C, 1.0};
    const double oracle = beta_mass(m, n, C);
    CHECK(barenblatt_mass(spec) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("profile constant for a prescribed mass") {
  const double C = barenblatt_constant_for_mass(2.0, 1, 1.0);
  CHECK(C == doctest::Approx(std::pow(std::sqrt(3.0) / 8.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(std::abs(C - 0.36051) < 1e-4);
  CHECK(barenblatt_mass(BarenblattSpec{2.0, 1, C, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS(barenblatt_constant_for_mass(2.0, 1, 0.0));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mass(0.01, 50.0);
  for (int i = 0; i < 30; ++i) {
    const double target = mass(rng);
    const double m = 1.2 + 0.1 * i;
    const int n = 1 + i % 3;
    const double c = barenblatt_constant_for_mass(m, n, target);
    CHECK(beta_mass(m, n, c) == doctest::Approx(target).epsilon(1e-10));
  }
}

TEST_CASE("support radius") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  CHECK(barenblatt_support_radius(1.0, spec) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(barenblatt_support_radius(8.0, spec) == doctest::Approx(2.0).epsilon(1e-14));

  const BarenblattSpec heavy{2.0, 1, barenblatt_constant_for_mass(2.0, 1, 1.0), 0.0};
  const double r = barenblatt_support_radius(1.0, heavy);
  CHECK(r == doctest::Approx(std::sqrt(12.0 * heavy.C)).epsilon(1e-14));
  CHECK(std::abs(r - 2.0799) < 5e-4);
  // Last positive sample of the profile on a fine grid.
  double last = 0.0;
  for (int i = 0; i <= 400000; ++i) {
    const double x[] = {i * 1e-5};
    if (barenblatt_eval(x, 1.0, heavy) > 0.0) last = x[0];
  }
  CHECK(std::abs(last - r) <= 1e-5);
}

TEST_CASE("propagation lower bound") {
  CHECK(chi_lower_bound(2.0, 2.0, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi_lower_bound(1.0, 2.0, 1, 1.0) == doctest::Approx(std::cbrt(0.5)).epsilon(1e-12));
  CHECK(chi_lower_bound(1.0, 2.0, 1, 1.0) == doctest::Approx(0.7937).epsilon(1e-4));
  CHECK_THROWS_AS(chi_lower_bound(1.0, 2.0, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(chi_lower_bound(1.0, 1.0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chi_lower_bound(0.0, 2.0, 1, 1.0), std::invalid_argument);
}

TEST_CASE("source support dominates the propagation bound on t in [1, 100]") {
  for (int n : {1, 2, 3}) {
    for (double m : {1.5, 2.0, 3.0}) {
      const BarenblattSpec spec{m, n, 0.3, 0.0};
      const double mass = barenblatt_mass(spec, 1.0);
      for (int i = 0; i <= 40; ++i) {
        const double t = std::pow(100.0, i / 40.0);
        CHECK(barenblatt_support_radius(t, spec) >= chi_lower_bound(t, m, n, mass));
      }
    }
  }
}

TEST_CASE("radius over bound ratio is 2.62 for m = 2, n = 1") {
  const BarenblattSpec spec{2.0, 1, barenblatt_constant_for_mass(2.0, 1, 1.0), 0.0};
  for (double t : {1.0, 2.0, 4.0, 64.0}) {
    CHECK(barenblatt_support_radius(t, spec) / chi_lower_bound(t, 2.0, 1, 1.0) == doctest::Approx(2.6207).epsilon(1e-4));
  }
}

TEST_CASE("Holder exponent rule") {
  auto s = holder_exponent_rule(1.5);
  CHECK(s.h == 1.0);
  CHECK(s.inv_h == 1.0);
  CHECK(s.inv_2h == 0.5);
  s = holder_exponent_rule(3.0);
  CHECK(s.h == 2.5);
  CHECK(s.inv_h == doctest::Approx(0.4));
  CHECK(holder_exponent_rule(2.0, 1.5).h == 1.5);
  CHECK(holder_exponent_rule(1.5, 1.0).h == 1.0);
  CHECK_THROWS(holder_exponent_rule(2.0, 2.0));
  CHECK_THROWS(holder_exponent_rule(2.0, 1.0));
  CHECK_THROWS(holder_exponent_rule(1.5, 1.2));
  CHECK_THROWS(holder_exponent_rule(1.0));
  for (double m = 1.05; m < 6.0; m += 0.1) {
    const auto r = holder_exponent_rule(m);
    CHECK(r.inv_h > 0.0);
    CHECK(r.inv_h <= 1.0);
    if (m >= 2.0) {
      CHECK(r.h > m - 1.0);
      CHECK(r.h < m);
    }
  }
}

TEST_CASE("gradient bound constant") {
  CHECK(gradient_bound_constant(2.0, 1.5, 1.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(gradient_bound_constant(2.0, 1.5, 2.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS(gradient_bound_constant(2.0, 1.0, 1.0));
  CHECK_THROWS(gradient_bound_constant(2.0, 2.0, 1.0));
  CHECK_THROWS(gradient_bound_constant(2.0, 1.5, 0.0));
  // Direct substitution for other admissible pairs.
  for (double m : {2.0, 2.5, 3.0}) {
    const double h = m - 0.3;
    const double q = m / h;
    const double M = 1.7;
    const double direct = 2.0 * m * std::abs((q - 1.0) * (q - 1.0 - q / m)) * std::pow(M, m - 2.0 * m / q - 1.0);
    CHECK(gradient_bound_constant(m, h, M) == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("heat solution: semigroup value") {
  const Grid grid(1, 20.0, 4001);
  Field kernel(grid, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.position(k)[0];
    kernel.values[k] = std::exp(-x * x / 4.0) / std::sqrt(4.0 * kPi);
  }
  const double origin[] = {0.0};
  CHECK(heat_exact_eval(origin, 1.0, kernel) == doctest::Approx(1.0 / std::sqrt(8.0 * kPi)).epsilon(1e-5));
  CHECK(1.0 / std::sqrt(8.0 * kPi) == doctest::Approx(0.19947).epsilon(1e-4));
  CHECK_THROWS(heat_exact_eval(origin, 0.0, kernel));
}

TEST_CASE("heat solution: small-time limit and mass") {
  const Grid grid(1, 10.0, 2001);
  Field u0(grid, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.position(k)[0];
    u0.values[k] = std::max(0.0, 1.0 - x * x / 4.0) * (1.0 + 0.3 * std::sin(x));
  }
  const double x[] = {0.7};
  const double direct = (1.0 - 0.49 / 4.0) * (1.0 + 0.3 * std::sin(0.7));
  CHECK(heat_exact_eval(x, 1e-8, u0) == doctest::Approx(direct).epsilon(1e-5));

  const Field later = heat_exact_field(u0, 0.5, grid);
  CHECK(later.mass() == doctest::Approx(u0.mass()).epsilon(1e-8));
  for (double v : later.values) CHECK(v > 0.0);
}

TEST_CASE("heat solution in two dimensions is separable") {
  const Grid grid(2, 6.0, 121);
  Field u0(grid, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = grid.position(k);
    u0.values[k] = std::exp(-(p[0] * p[0] + p[1] * p[1]) / 0.5);
  }
  const Field v = heat_exact_field(u0, 0.3, grid);
  for (std::size_t k : {std::size_t{0}, grid.size() / 2, grid.size() / 3}) {
    const auto p = grid.position(k);
    const double x[] = {p[0], p[1]};
    CHECK(v.values[k] == doctest::Approx(heat_exact_eval(x, 0.3, u0)).epsilon(1e-12));
  }
  // Gaussian of variance s per axis goes to variance s + 2t.
  const double s = 0.25;
  const double t = 0.3;
  const double expected = s / (s + 2.0 * t);
  const double origin[] = {0.0, 0.0};
  CHECK(heat_exact_eval(origin, t, u0) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("pressure Laplacian equals -n/((n(m-1)+2)t) inside the support") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  for (double t : {1.0, 2.0, 4.0}) {
    for (double dx : {0.02, 0.01, 0.005}) {
      double worst = 0.0;
      const double r = barenblatt_support_radius(t, spec);
      for (double x = -0.8 * r; x <= 0.8 * r; x += 0.05) {
        auto p = [&](double y) { const double q[] = {y}; return 2.0 * barenblatt_eval(q, t, spec); };
        const double lap = (p(x + dx) - 2.0 * p(x) + p(x - dx)) / (dx * dx);
        worst = std::max(worst, std::abs(lap + 1.0 / (3.0 * t)));
      }
      CHECK(worst <= 5.0 * dx * dx);
    }
  }
}

TEST_CASE("analytic solution satisfies the discrete equation to O(dx^2 + dt)") {
  const BarenblattSpec spec{2.0, 1, 1.0 / 12.0, 0.0};
  const double t = 1.5;
  std::vector<double> errs;
  for (double dx : {0.04, 0.02, 0.01}) {
    const double dt = 0.25 * dx * dx;
    auto u = [&](double x, double s) { const double q[] = {x}; return barenblatt_eval(q, s, spec); };
    double worst = 0.0;
    for (double x = -0.8; x <= 0.8; x += 0.1) {
      const double ut = (u(x, t + dt) - u(x, t)) / dt;
      const double w = [&](double y) { return u(y, t) * u(y, t); }(x);
      const double lap = (u(x + dx, t) * u(x + dx, t) - 2.0 * w + u(x - dx, t) * u(x - dx, t)) / (dx * dx);
      worst = std::max(worst, std::abs(ut - lap));
    }
    errs.push_back(worst);
  }
  CHECK(errs[1] < errs[0] / 3.0);
  CHECK(errs[2] < errs[1] / 3.0);
}
