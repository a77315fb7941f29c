#include "sgim/regression.hpp"

#include <cmath>

namespace sgim {

PolicyParams LocalModel::inverse_lookup(const Outcome& goal) const {
  const auto neighbors = memory_.nearest(goal, k_);
  if (neighbors.empty()) throw ModelColdError(std::string("no recorded ") + kind_name(goal.kind) + " outcome");
  const PolicyParams& nearest = memory_[neighbors.front().episode].theta;
  if (neighbors.size() == 1) return nearest;

  std::array<double, kPolicyDim> acc{};
  double total = 0.0;
  bool all_tiny = true;
  const double two_s2 = 2.0 * bandwidth_ * bandwidth_;
  for (const Neighbor& n : neighbors) {
    const double w = std::exp(-n.distance * n.distance / two_s2);
    if (w >= 1e-300) all_tiny = false;
    total += w;
    const PolicyParams& th = memory_[n.episode].theta;
    for (std::size_t i = 0; i < kPolicyDim; ++i) acc[i] += w * th[i];
  }
  if (all_tiny || !(total > 0.0)) return nearest;
  for (double& v : acc) v /= total;
  return bounds_.clamp(PolicyParams(acc));
}

std::pair<Outcome, double> LocalModel::best_recorded(const Outcome& goal) const {
  const auto neighbors = memory_.nearest(goal, 1);
  if (neighbors.empty()) throw ModelColdError(std::string("no recorded ") + kind_name(goal.kind) + " outcome");
  const Outcome* o = memory_[neighbors.front().episode].observed.find(goal.kind);
  return {*o, neighbors.front().distance};
}

}  // namespace sgim
