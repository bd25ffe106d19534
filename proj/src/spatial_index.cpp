#include "cheeger/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace cheeger {

std::size_t SpatialIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : k) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

SpatialIndex::SpatialIndex(std::span<const Point> points, int dim, double cell)
    : points_(points), dim_(dim), cell_(cell) {
  buckets_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    buckets_[key_of(points[i])].push_back(static_cast<int>(i));
  }
}

SpatialIndex::Key SpatialIndex::key_of(const Point& x) const {
  Key k{};
  for (int d = 0; d < dim_; ++d) k[d] = static_cast<std::int64_t>(std::floor(x[d] / cell_));
  return k;
}

std::vector<int> SpatialIndex::within(const Point& x, double radius) const {
  std::vector<int> out;
  const double r2 = radius * radius;
  for_each_candidate(x, radius, [&](int j) {
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
      const double t = x[k] - points_[j][k];
      s += t * t;
    }
    if (s <= r2) out.push_back(j);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cheeger
