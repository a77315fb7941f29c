#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sgim/types.hpp"

namespace sgim {

struct Neighbor {
  std::size_t episode = 0;
  double distance = 0.0;  // normalized J

  bool operator==(const Neighbor&) const = default;
};

/// Strict ordering used by every nearest-neighbor query: distance, then
/// insertion order.
inline bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.episode < b.episode);
}

/// Uniform-grid bucket index over one outcome subspace. Points outside the
/// box are kept in an overflow list that is always scanned.
class OutcomeGridIndex {
 public:
  OutcomeGridIndex(const OutcomeBox& box, const OutcomeSpace& space, std::size_t cells_per_dim);

  void insert(const Outcome& o, std::size_t episode);
  std::size_t size() const { return points_.size(); }

  /// k nearest points to goal, sorted with neighbor_less. Same answer as a
  /// linear scan.
  std::vector<Neighbor> nearest(const Outcome& goal, std::size_t k) const;

 private:
  struct Point {
    Outcome outcome;
    std::size_t episode;
  };

  std::size_t cell_coord(double v, std::size_t d) const;
  std::size_t cell_id(const std::array<std::size_t, 2>& c) const { return c[0] + c[1] * cells_[0]; }

  OutcomeBox box_;
  OutcomeSpace space_;
  std::array<std::size_t, 2> cells_{1, 1};
  std::array<double, 2> cell_width_{1.0, 1.0};
  std::vector<std::vector<std::size_t>> buckets_;  // indices into points_
  std::vector<std::size_t> overflow_;
  std::vector<Point> points_;
};

/// Append-only store of executed episodes, indexed per outcome subspace.
/// Single writer; copies are independent snapshots.
class EpisodicMemory {
 public:
  explicit EpisodicMemory(const OutcomeSpace& space);

  void append(Episode e);
  std::size_t size() const { return episodes_.size(); }
  const Episode& operator[](std::size_t i) const { return episodes_[i]; }
  const std::vector<Episode>& episodes() const { return episodes_; }
  const OutcomeSpace& space() const { return space_; }

  /// Number of recorded outcomes of this kind.
  std::size_t count(OutcomeKind k) const { return index_[subspace_of(k)].size(); }

  /// Episodes whose recorded outcome of goal's kind is nearest to goal.
  std::vector<Neighbor> nearest(const Outcome& goal, std::size_t k) const;

 private:
  OutcomeSpace space_;
  std::vector<Episode> episodes_;
  std::array<OutcomeGridIndex, kSubspaces> index_;
};

/// Reference nearest-neighbor search: full scan over the memory.
std::vector<Neighbor> nearest_linear(const EpisodicMemory& memory, const Outcome& goal, std::size_t k);

}  // namespace sgim
