#include "pmelab/controls.hpp"

#include <cmath>
#include <vector>

#include "pmelab/harness.hpp"
#include "pmelab/solver.hpp"

namespace pmelab {

CheckReport neg_ab_time_mislabel(double label_m) {
  const Grid grid(1, 16.0, 401);
  PMEProblem problem;
  problem.initial = GaussianInitial{1.0, std::sqrt(2.0)};
  problem.t0 = 1.0;
  problem.t1 = 2.0;
  for (int i = 0; i <= 30; ++i) problem.snapshot_times.push_back(std::pow(2.0, i / 30.0));
  problem.snapshot_times.back() = 2.0;
  const auto run = solve_heat(problem, grid);
  auto report = check_ab_time(run.snapshots, label_m);
  report.name = "neg_ab_time_mislabel";
  report.params["label.m"] = label_m;
  report.params["m"] = 1.0;
  report.negative_control = true;
  return report;
}

CheckReport neg_gradient_frozen(const Field& snapshot, double m, double h, double M, double relabel_t) {
  Field frozen = snapshot;
  frozen.t = relabel_t;
  auto report = check_gradient_bound({frozen}, m, h, M);
  report.name = "neg_gradient_frozen";
  report.params["t_source"] = snapshot.t;
  report.params["t_label"] = relabel_t;
  report.negative_control = true;
  return report;
}

CheckReport neg_holder_supercritical(std::uint64_t seed) {
  std::vector<HolderEstimate> levels;
  for (int points : {201, 401, 801}) {
    const Grid grid(1, 3.0, points);
    PMEProblem problem;
    problem.m = 3.0;
    problem.initial = BarenblattInitial{1.0 / 12.0, 0.0};
    problem.t0 = 1.0;
    problem.t1 = 2.0;
    for (int i = 0; i <= 40; ++i) problem.snapshot_times.push_back(1.0 + i * 0.025);
    const auto run = solve_pme(problem, grid);
    levels.push_back(holder_quotient(run.snapshots, 1.0, 1.0, 2.5, seed));
  }
  auto report = check_holder_refinement(levels);
  report.name = "neg_holder_supercritical";
  report.params["m"] = 3.0;
  report.negative_control = true;
  return report;
}

}  // namespace pmelab
