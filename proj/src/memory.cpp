#include "sgim/memory.hpp"

#include <algorithm>
#include <cmath>

namespace sgim {

namespace {

// Keeps `best` sorted and at most k long.
void offer(std::vector<Neighbor>& best, std::size_t k, Neighbor n) {
  if (best.size() == k && !neighbor_less(n, best.back())) return;
  auto pos = std::upper_bound(best.begin(), best.end(), n, neighbor_less);
  best.insert(pos, n);
  if (best.size() > k) best.pop_back();
}

}  // namespace

OutcomeGridIndex::OutcomeGridIndex(const OutcomeBox& box, const OutcomeSpace& space, std::size_t cells_per_dim)
    : box_(box), space_(space) {
  for (std::size_t d = 0; d < box_.dims(); ++d) {
    cells_[d] = std::max<std::size_t>(1, cells_per_dim);
    cell_width_[d] = box_.width(d) / static_cast<double>(cells_[d]);
  }
  buckets_.resize(cells_[0] * cells_[1]);
}

std::size_t OutcomeGridIndex::cell_coord(double v, std::size_t d) const {
  const double c = std::floor((v - box_.lo[d]) / cell_width_[d]);
  if (!(c > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(c), cells_[d] - 1);
}

void OutcomeGridIndex::insert(const Outcome& o, std::size_t episode) {
  const std::size_t id = points_.size();
  points_.push_back({o, episode});
  if (!box_.contains(o)) {
    overflow_.push_back(id);
    return;
  }
  std::array<std::size_t, 2> c{0, 0};
  for (std::size_t d = 0; d < box_.dims(); ++d) c[d] = cell_coord(o.v[d], d);
  buckets_[cell_id(c)].push_back(id);
}

std::vector<Neighbor> OutcomeGridIndex::nearest(const Outcome& goal, std::size_t k) const {
  std::vector<Neighbor> best;
  if (k == 0 || points_.empty() || goal.kind != box_.kind) return best;
  best.reserve(k + 1);

  for (std::size_t id : overflow_) {
    const Point& p = points_[id];
    offer(best, k, {p.episode, distance_j(goal, p.outcome, space_)});
  }

  const std::size_t dims = box_.dims();
  std::array<std::ptrdiff_t, 2> centre{0, 0};
  for (std::size_t d = 0; d < dims; ++d) centre[d] = static_cast<std::ptrdiff_t>(cell_coord(goal.v[d], d));

  double min_width = cell_width_[0];
  if (dims == 2) min_width = std::min(min_width, cell_width_[1]);
  const double diag = box_.diagonal();
  const auto max_ring = static_cast<std::ptrdiff_t>(std::max(cells_[0], cells_[1]));

  auto scan_cell = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(cells_[0]) ||
        j >= static_cast<std::ptrdiff_t>(cells_[1])) {
      return;
    }
    for (std::size_t id : buckets_[cell_id({static_cast<std::size_t>(i), static_cast<std::size_t>(j)})]) {
      const Point& p = points_[id];
      offer(best, k, {p.episode, distance_j(goal, p.outcome, space_)});
    }
  };

  for (std::ptrdiff_t r = 0; r <= max_ring; ++r) {
    // Any point in ring r is at least (r - 2) cells away; one ring of slack
    // absorbs rounding in cell assignment.
    const double bound = static_cast<double>(std::max<std::ptrdiff_t>(0, r - 2)) * min_width / diag;
    if (best.size() == k && bound > best.back().distance) break;
    if (dims == 1) {
      scan_cell(centre[0] - r, 0);
      if (r > 0) scan_cell(centre[0] + r, 0);
      continue;
    }
    if (r == 0) {
      scan_cell(centre[0], centre[1]);
      continue;
    }
    for (std::ptrdiff_t i = centre[0] - r; i <= centre[0] + r; ++i) {
      scan_cell(i, centre[1] - r);
      scan_cell(i, centre[1] + r);
    }
    for (std::ptrdiff_t j = centre[1] - r + 1; j <= centre[1] + r - 1; ++j) {
      scan_cell(centre[0] - r, j);
      scan_cell(centre[0] + r, j);
    }
  }
  return best;
}

EpisodicMemory::EpisodicMemory(const OutcomeSpace& space)
    : space_(space),
      index_{OutcomeGridIndex(space.boxes[0], space, 64), OutcomeGridIndex(space.boxes[1], space, 512)} {}

void EpisodicMemory::append(Episode e) {
  const std::size_t id = episodes_.size();
  index_[subspace_of(OutcomeKind::Throw)].insert(e.observed.thrown, id);
  if (e.observed.placed) index_[subspace_of(OutcomeKind::Place)].insert(*e.observed.placed, id);
  episodes_.push_back(std::move(e));
}

std::vector<Neighbor> EpisodicMemory::nearest(const Outcome& goal, std::size_t k) const {
  return index_[subspace_of(goal.kind)].nearest(goal, k);
}

std::vector<Neighbor> nearest_linear(const EpisodicMemory& memory, const Outcome& goal, std::size_t k) {
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < memory.size(); ++i) {
    if (const Outcome* o = memory[i].observed.find(goal.kind)) {
      all.push_back({i, distance_j(goal, *o, memory.space())});
    }
  }
  std::sort(all.begin(), all.end(), neighbor_less);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace sgim
