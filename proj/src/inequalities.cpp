#include "pmelab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace pmelab {

PowDiffResult pow_diff_holds(double a, double b, double beta) {
  if (!(beta > 1.0)) throw std::invalid_argument("pow_diff_holds: beta must exceed 1");
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("pow_diff_holds: a and b must be nonnegative");
  const double ab = std::pow(a, beta);
  const double bb = std::pow(b, beta);
  const double lhs = std::pow(std::abs(a - b), beta);
  const double rhs = std::abs(ab - bb);
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(ab, bb);
  return {lhs, rhs, lhs <= rhs + slack};
}

PowDiffSweep pow_diff_sweep(std::uint64_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_real_distribution<double> exponent(0.0, 7.0);
  PowDiffSweep sweep;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const double a = value(rng);
    const double b = value(rng);
    const double beta = 8.0 - exponent(rng);
    const auto r = pow_diff_holds(a, b, beta);
    ++sweep.cases;
    if (!r.holds) ++sweep.violations;
    if (a != b && a > 0.0 && b > 0.0 && r.lhs >= r.rhs) ++sweep.interior_equalities;
  }
  return sweep;
}

namespace {

constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                          0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                            0.4786286704993665, 0.2369268850561891};

struct Node {
  double x;
  double w;
};

// Composite 5-point Gauss-Legendre on [lo, hi] with at least `samples` nodes.
std::vector<Node> gauss_nodes(double lo, double hi, int samples) {
  const int panels = (samples + 4) / 5;
  const double width = (hi - lo) / panels;
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(panels) * 5);
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (int q = 0; q < 5; ++q) out.push_back({mid + 0.5 * width * kNodes[q], 0.5 * width * kWeights[q]});
  }
  return out;
}

struct Evaluator {
  std::function<double(std::array<double, 2>)> value;
  std::function<std::array<double, 2>(std::array<double, 2>)> grad;
};

Evaluator make_evaluator(const TestFunctionSpec& spec) {
  const double rho = spec.rho;
  const double amp = spec.amplitude;
  switch (spec.kind) {
    case TestFunctionKind::PolynomialBump:
      return {[=](std::array<double, 2> x) { return amp * (1.0 - (x[0] * x[0] + x[1] * x[1]) / (rho * rho)); },
              [=](std::array<double, 2> x) {
                return std::array<double, 2>{-2.0 * amp * x[0] / (rho * rho), -2.0 * amp * x[1] / (rho * rho)};
              }};
    case TestFunctionKind::CosineBump: {
      const double k = std::numbers::pi / (2.0 * rho);
      return {[=](std::array<double, 2> x) { return amp * std::cos(k * std::hypot(x[0], x[1])); },
              [=](std::array<double, 2> x) {
                const double r = std::hypot(x[0], x[1]);
                if (r == 0.0) return std::array<double, 2>{0.0, 0.0};
                const double d = -amp * k * std::sin(k * r) / r;
                return std::array<double, 2>{d * x[0], d * x[1]};
              }};
    }
    case TestFunctionKind::RandomSmooth: {
      struct Mode {
        double a, wx, wy, phase;
      };
      std::mt19937_64 rng(spec.seed);
      std::uniform_int_distribution<int> count(1, 6);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      std::vector<Mode> modes(static_cast<std::size_t>(count(rng)));
      for (auto& mode : modes) {
        mode.a = 0.8 * unit(rng);
        mode.wx = 6.0 * unit(rng);
        mode.wy = spec.n == 2 ? 6.0 * unit(rng) : 0.0;
        mode.phase = phase(rng);
      }
      auto series = [=](std::array<double, 2> x, std::array<double, 2>* g) {
        double s = 1.0;
        std::array<double, 2> d{0.0, 0.0};
        for (const auto& mode : modes) {
          const double arg = (mode.wx * x[0] + mode.wy * x[1]) / rho + mode.phase;
          s += mode.a * std::cos(arg);
          d[0] -= mode.a * std::sin(arg) * mode.wx / rho;
          d[1] -= mode.a * std::sin(arg) * mode.wy / rho;
        }
        if (g) *g = d;
        return s;
      };
      return {[=](std::array<double, 2> x) {
                return amp * (1.0 - (x[0] * x[0] + x[1] * x[1]) / (rho * rho)) * series(x, nullptr);
              },
              [=](std::array<double, 2> x) {
                std::array<double, 2> dg{};
                const double g = series(x, &dg);
                const double s = 1.0 - (x[0] * x[0] + x[1] * x[1]) / (rho * rho);
                return std::array<double, 2>{amp * (g * (-2.0 * x[0] / (rho * rho)) + s * dg[0]),
                                             amp * (g * (-2.0 * x[1] / (rho * rho)) + s * dg[1])};
              }};
    }
    case TestFunctionKind::Custom:
      if (!spec.value || !spec.grad) throw std::invalid_argument("poincare_ratio: custom kind needs value and grad");
      return {spec.value, spec.grad};
  }
  throw std::invalid_argument("poincare_ratio: unknown test function kind");
}

}  // namespace

PoincareResult poincare_ratio(const TestFunctionSpec& spec) {
  if (!(spec.rho > 0.0)) throw std::invalid_argument("poincare_ratio: rho must be positive");
  if (spec.n != 1 && spec.n != 2) throw std::invalid_argument("poincare_ratio: n must be 1 or 2");
  const int minimum = spec.n == 1 ? 1000 : 500;
  if (spec.samples < minimum) {
    throw std::invalid_argument("poincare_ratio: samples must be at least " + std::to_string(minimum));
  }
  const Evaluator f = make_evaluator(spec);

  double u2 = 0.0;
  double g2 = 0.0;
  double peak = 0.0;
  auto accumulate = [&](std::array<double, 2> x, double w) {
    const double u = f.value(x);
    const auto g = f.grad(x);
    u2 += w * u * u;
    g2 += w * (g[0] * g[0] + g[1] * g[1]);
    peak = std::max(peak, std::abs(u));
  };
  std::vector<std::array<double, 2>> rim;
  if (spec.n == 1) {
    for (const auto& node : gauss_nodes(-spec.rho, spec.rho, spec.samples)) accumulate({node.x, 0.0}, node.w);
    rim = {{-spec.rho, 0.0}, {spec.rho, 0.0}};
  } else {
    const int angles = spec.samples;
    const double dtheta = 2.0 * std::numbers::pi / angles;
    for (const auto& node : gauss_nodes(0.0, spec.rho, spec.samples)) {
      for (int a = 0; a < angles; ++a) {
        const double theta = a * dtheta;
        accumulate({node.x * std::cos(theta), node.x * std::sin(theta)}, node.w * node.x * dtheta);
      }
    }
    for (int a = 0; a < 64; ++a) {
      const double theta = 2.0 * std::numbers::pi * a / 64.0;
      rim.push_back({spec.rho * std::cos(theta), spec.rho * std::sin(theta)});
    }
  }
  for (const auto& x : rim) {
    if (std::abs(f.value(x)) > 1e-8 * std::max(peak, 1e-300)) {
      throw std::invalid_argument("poincare_ratio: test function does not vanish on the ball boundary");
    }
  }
  if (!(g2 > 0.0) || !std::isfinite(u2) || !std::isfinite(g2)) {
    throw std::invalid_argument("poincare_ratio: gradient norm is zero or not finite");
  }
  const double l2 = std::sqrt(u2);
  const double gn = std::sqrt(g2);
  const double ratio = l2 / gn;
  return {l2, gn, ratio, ratio <= spec.rho * (1.0 + 1e-3)};
}

}  // namespace pmelab
