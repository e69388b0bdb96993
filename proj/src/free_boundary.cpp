#include "pmelab/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace pmelab {

std::size_t PositivityMask::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

PositivityMask positivity_set(const Field& field, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("positivity threshold must be positive");
  PositivityMask mask{field.grid, field.t, std::vector<char>(field.values.size(), 0), threshold};
  for (std::size_t k = 0; k < field.values.size(); ++k) mask.flags[k] = field.values[k] > threshold ? 1 : 0;
  return mask;
}

SupportStats support_radius_numeric(const PositivityMask& mask) {
  if (mask.empty()) throw std::invalid_argument("support radius of an empty positivity set");
  SupportStats stats;
  for (std::size_t k = 0; k < mask.flags.size(); ++k) {
    if (!mask.flags[k]) continue;
    stats.radius = std::max(stats.radius, mask.grid.radius(k));
    for (std::size_t nb : neighbours(mask.grid, k)) {
      if (!mask.flags[nb]) {
        stats.boundary_cells.push_back(k);
        break;
      }
    }
  }
  return stats;
}

std::vector<int> interface_distance(const PositivityMask& mask, int cap) {
  const std::size_t size = mask.flags.size();
  std::vector<int> dist(size, cap + 1);
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < size; ++k) {
    if (!mask.flags[k]) {
      dist[k] = 0;
      queue.push_back(k);
    }
  }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    if (dist[k] >= cap) continue;
    for (std::size_t nb : neighbours(mask.grid, k)) {
      if (dist[nb] > dist[k] + 1) {
        dist[nb] = dist[k] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

PersistenceReport persistence_check(const std::vector<Field>& snapshots, double threshold) {
  if (snapshots.size() < 2) throw std::invalid_argument("persistence_check needs at least two snapshots");
  PersistenceReport report;
  for (std::size_t s = 0; s + 1 < snapshots.size(); ++s) {
    const auto before = positivity_set(snapshots[s], threshold);
    const auto after = positivity_set(snapshots[s + 1], threshold);
    for (std::size_t k = 0; k < before.flags.size(); ++k) {
      if (before.flags[k] && !after.flags[k]) {
        report.nested = false;
        report.violations.push_back({k, snapshots[s].t, snapshots[s + 1].t});
      }
    }
  }
  return report;
}

TangencyResult tangency_profile(const Field& field, double beta, const PositivityMask& mask, double h) {
  TangencyResult result;
  result.in_hypothesis = beta > h;
  std::vector<double> phi(field.values.size());
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = mask.flags[k] ? std::pow(field.values[k], beta) : 0.0;
  const auto grad = gradient(field.grid, phi);
  if (mask.empty()) return result;
  const auto stats = support_radius_numeric(mask);
  result.boundary_count = stats.boundary_cells.size();
  for (std::size_t k : stats.boundary_cells) {
    result.max_gradient = std::max(result.max_gradient, std::hypot(grad[k][0], grad[k][1]));
  }
  return result;
}

}  // namespace pmelab
