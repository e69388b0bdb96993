#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "pmelab/inequalities.hpp"

using namespace pmelab;

TEST_CASE("power difference examples") {
  const auto r = pow_diff_holds(4.0, 1.0, 2.0);
  CHECK(r.lhs == 9.0);
  CHECK(r.rhs == 15.0);
  CHECK(r.holds);
  const auto eq = pow_diff_holds(7.0, 7.0, 3.0);
  CHECK(eq.lhs == 0.0);
  CHECK(eq.rhs == 0.0);
  CHECK(eq.holds);
  CHECK(pow_diff_holds(0.0, 5.0, 2.5).holds);
}

TEST_CASE("power difference rejects beta <= 1 and negative arguments") {
  CHECK_THROWS(pow_diff_holds(2.0, 1.0, 1.0));
  CHECK_THROWS(pow_diff_holds(2.0, 1.0, 0.5));
  CHECK_THROWS(pow_diff_holds(-1.0, 1.0, 2.0));
  CHECK_THROWS(pow_diff_holds(1.0, -1.0, 2.0));
}

TEST_CASE("power difference randomized sweep") {
  const auto sweep = pow_diff_sweep(1000000, 20240229);
  CHECK(sweep.cases == 1000000);
  CHECK(sweep.violations == 0);
  CHECK(sweep.interior_equalities == 0);
  const auto again = pow_diff_sweep(1000000, 20240229);
  CHECK(again.violations == sweep.violations);
}

TEST_CASE("power difference is strict away from the diagonal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.5, 10.0);
  std::uniform_real_distribution<double> be(1.1, 8.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = ab(rng);
    const double b = a + 0.25 + ab(rng);
    const auto r = pow_diff_holds(a, b, be(rng));
    CHECK(r.lhs < r.rhs);
  }
}

TEST_CASE("Poincare quadrature matches hand integrals") {
  TestFunctionSpec poly;
  const auto p = poincare_ratio(poly);
  CHECK(std::abs(p.l2_norm * p.l2_norm - 16.0 / 15.0) <= 1e-6);
  CHECK(std::abs(p.grad_norm * p.grad_norm - 8.0 / 3.0) <= 1e-6);
  CHECK(std::abs(p.ratio - std::sqrt(0.4)) <= 1e-6);
  CHECK(p.holds);

  TestFunctionSpec cosine;
  cosine.kind = TestFunctionKind::CosineBump;
  const auto c = poincare_ratio(cosine);
  CHECK(std::abs(c.l2_norm * c.l2_norm - 1.0) <= 1e-6);
  CHECK(std::abs(c.grad_norm * c.grad_norm - std::numbers::pi * std::numbers::pi / 4.0) <= 1e-6);
  CHECK(std::abs(c.ratio - 2.0 / std::numbers::pi) <= 1e-6);
  CHECK(c.holds);
}

TEST_CASE("Poincare on the disc") {
  TestFunctionSpec poly;
  poly.n = 2;
  poly.samples = 500;
  const auto p = poincare_ratio(poly);
  CHECK(p.l2_norm * p.l2_norm == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-9));
  CHECK(p.grad_norm * p.grad_norm == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-9));
  CHECK(p.holds);

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    TestFunctionSpec r;
    r.kind = TestFunctionKind::RandomSmooth;
    r.n = 2;
    r.samples = 500;
    r.seed = seed;
    const auto res = poincare_ratio(r);
    CHECK(res.ratio <= 1.0);
    CHECK(res.holds);
  }
}

TEST_CASE("Poincare ratio is invariant under amplitude scaling") {
  for (auto kind : {TestFunctionKind::PolynomialBump, TestFunctionKind::CosineBump, TestFunctionKind::RandomSmooth}) {
    TestFunctionSpec a;
    a.kind = kind;
    a.seed = 11;
    TestFunctionSpec b = a;
    b.amplitude = 37.5;
    CHECK(std::abs(poincare_ratio(b).ratio - poincare_ratio(a).ratio) <= 1e-12);
  }
}

TEST_CASE("Poincare ratio scales linearly under dilation") {
  for (auto kind : {TestFunctionKind::PolynomialBump, TestFunctionKind::CosineBump, TestFunctionKind::RandomSmooth}) {
    for (int n : {1, 2}) {
      TestFunctionSpec unit;
      unit.kind = kind;
      unit.n = n;
      unit.samples = n == 1 ? 1000 : 500;
      unit.seed = 7;
      const double base = poincare_ratio(unit).ratio;
      for (double rho : {0.25, 2.0, 8.0}) {
        TestFunctionSpec s = unit;
        s.rho = rho;
        const auto res = poincare_ratio(s);
        CHECK(std::abs(res.ratio - rho * base) <= 1e-10 * rho);
        CHECK(res.holds);
      }
    }
  }
}

TEST_CASE("Poincare input validation") {
  TestFunctionSpec few;
  few.samples = 999;
  CHECK_THROWS(poincare_ratio(few));
  TestFunctionSpec few2;
  few2.n = 2;
  few2.samples = 499;
  CHECK_THROWS(poincare_ratio(few2));

  TestFunctionSpec custom;
  custom.kind = TestFunctionKind::Custom;
  custom.value = [](std::array<double, 2>) { return 1.0; };
  custom.grad = [](std::array<double, 2>) { return std::array<double, 2>{0.0, 0.0}; };
  CHECK_THROWS(poincare_ratio(custom));

  TestFunctionSpec sine;
  sine.kind = TestFunctionKind::Custom;
  sine.value = [](std::array<double, 2> x) { return std::sin(std::numbers::pi * x[0]); };
  sine.grad = [](std::array<double, 2> x) {
    return std::array<double, 2>{std::numbers::pi * std::cos(std::numbers::pi * x[0]), 0.0};
  };
  const auto s = poincare_ratio(sine);
  CHECK(s.ratio == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-9));
}
