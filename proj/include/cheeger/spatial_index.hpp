#pragma once

#include "cheeger/manifold.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace cheeger {

/// Uniform hash grid over ambient coordinates. Points are bucketed by
/// floor(x / cell) in each of the first `dim` coordinates.
class SpatialIndex {
 public:
  SpatialIndex(std::span<const Point> points, int dim, double cell);

  /// Indices j with |x - p_j| <= radius (Euclidean), ascending.
  std::vector<int> within(const Point& x, double radius) const;
  /// Calls visit(j) for every candidate in the cells overlapping the
  /// radius-box around x, without the distance test and in no fixed order.
  template <class Visit>
  void for_each_candidate(const Point& x, double radius, Visit&& visit) const;

  /// Nearest index by the supplied metric, ties to the smallest index.
  /// Searches expanding shells until the answer is certain.
  template <class Metric>
  int nearest(const Point& x, Metric&& metric, double* best_distance = nullptr) const;

  std::size_t size() const { return points_.size(); }
  double cell() const { return cell_; }

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Key key_of(const Point& x) const;

  std::span<const Point> points_;
  int dim_;
  double cell_;
  std::unordered_map<Key, std::vector<int>, KeyHash> buckets_;
};

template <class Visit>
void SpatialIndex::for_each_candidate(const Point& x, double radius, Visit&& visit) const {
  Key lo{}, hi{};
  for (int k = 0; k < dim_; ++k) {
    lo[k] = static_cast<std::int64_t>(std::floor((x[k] - radius) / cell_));
    hi[k] = static_cast<std::int64_t>(std::floor((x[k] + radius) / cell_));
  }
  Key cur = lo;
  while (true) {
    auto it = buckets_.find(cur);
    if (it != buckets_.end()) {
      for (int j : it->second) visit(j);
    }
    int k = 0;
    for (; k < dim_; ++k) {
      if (cur[k] < hi[k]) {
        ++cur[k];
        break;
      }
      cur[k] = lo[k];
    }
    if (k == dim_) break;
  }
}

template <class Metric>
int SpatialIndex::nearest(const Point& x, Metric&& metric, double* best_distance) const {
  int best = -1;
  double best_d = 0.0;
  double radius = cell_;
  while (true) {
    for_each_candidate(x, radius, [&](int j) {
      const double d = metric(x, points_[j]);
      if (best < 0 || d < best_d || (d == best_d && j < best)) {
        best = j;
        best_d = d;
      }
    });
    // Every point with Euclidean distance <= radius was visited; the metric
    // dominates Euclidean distance, so the answer is final once best_d fits.
    if (best >= 0 && best_d <= radius) break;
    if (radius > 1e6) break;
    radius *= 2.0;
  }
  if (best_distance != nullptr) *best_distance = best_d;
  return best;
}

}  // namespace cheeger
