#include "cheeger/proximity_graph.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"
#include "cheeger/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cheeger {

ProximityGraph::ProximityGraph(std::size_t n, double epsilon, int m,
                               std::vector<std::int64_t> offsets, std::vector<int> targets)
    : n_(n), epsilon_(epsilon), m_(m), offsets_(std::move(offsets)), targets_(std::move(targets)) {}

double ProximityGraph::functional_scale() const {
  const double nn = static_cast<double>(n_);
  return 1.0 / (nn * nn * std::pow(epsilon_, m_ + 1));
}

ProximityGraph build_graph(const PointCloud& cloud, double epsilon) {
  const std::size_t n = cloud.size();
  std::vector<std::int64_t> offsets(n + 1, 0);
  std::vector<int> targets;
  if (epsilon > 0.0 && n > 1) {
    const int dim = cloud.ambient_dim;
    const double eps2 = epsilon * epsilon;
    SpatialIndex index(cloud.points, dim, epsilon);
    std::vector<int> row;
    for (std::size_t i = 0; i < n; ++i) {
      row.clear();
      const Point& x = cloud.points[i];
      index.for_each_candidate(x, epsilon, [&](int j) {
        if (static_cast<std::size_t>(j) == i) return;
        double s = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double t = x[k] - cloud.points[j][k];
          s += t * t;
        }
        if (s <= eps2) row.push_back(j);
      });
      std::sort(row.begin(), row.end());
      targets.insert(targets.end(), row.begin(), row.end());
      offsets[i + 1] = static_cast<std::int64_t>(targets.size());
    }
  }
  ProximityGraph g(n, epsilon, cloud.intrinsic_dim, std::move(offsets), std::move(targets));
  if (cloud.manifold) g.manifold = cloud.manifold->kind();
  return g;
}

ProximityGraph graph_from_edges(std::size_t n, double epsilon, int m,
                                std::span<const std::pair<int, int>> edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    if (i == j) continue;
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n) {
      throw Error(ErrorCode::Io, "edge index out of range");
    }
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<std::int64_t> offsets(n + 1, 0);
  std::vector<int> targets;
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    targets.insert(targets.end(), adj[i].begin(), adj[i].end());
    offsets[i + 1] = static_cast<std::int64_t>(targets.size());
  }
  return ProximityGraph(n, epsilon, m, std::move(offsets), std::move(targets));
}

double gtv(const ProximityGraph& g, std::span<const double> u) {
  if (u.size() != g.size()) throw Error(ErrorCode::Config, "vertex function length != n");
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors(i)) acc.add(std::abs(u[i] - u[j]));
  }
  return acc.value() * g.functional_scale();
}

std::vector<std::uint8_t> subset_mask(std::size_t n, std::span<const int> subset) {
  std::vector<std::uint8_t> mask(n, 0);
  for (int v : subset) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::Config, "subset index out of range");
    }
    mask[v] = 1;
  }
  return mask;
}

std::int64_t cut_count(const ProximityGraph& g, std::span<const std::uint8_t> mask) {
  std::int64_t cut = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!mask[i]) continue;
    for (int j : g.neighbors(i)) cut += mask[j] ? 0 : 1;
  }
  return cut;
}

CutAndBalance cut_and_balance(const ProximityGraph& g, std::span<const int> subset) {
  const auto mask = subset_mask(g.size(), subset);
  CutAndBalance out;
  out.size = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
  out.cut = cut_count(g, mask);
  out.gtv = 2.0 * static_cast<double>(out.cut) * g.functional_scale();
  if (g.size() > 0) {
    const double frac = static_cast<double>(out.size) / static_cast<double>(g.size());
    out.balance = std::min(frac, 1.0 - frac);
  }
  return out;
}

std::string to_string(const Objective& o) {
  switch (o.kind) {
    case Objective::Kind::CheegerRatio: return "cheeger";
    case Objective::Kind::RatioCut: return "ratio";
    case Objective::Kind::Modularity: return "modularity";
  }
  return "";
}

Objective objective_from_name(const std::string& name, double gamma) {
  if (name == "cheeger") return Objective::cheeger();
  if (name == "ratio") return Objective::ratio_cut();
  if (name == "modularity") return Objective::modularity(gamma);
  throw Error(ErrorCode::Config, "unknown objective '" + name + "'");
}

ObjectiveValue objective_from_counts(const Objective& o, std::int64_t cut, std::size_t size,
                                     std::size_t n, double scale) {
  const double gtv_value = 2.0 * static_cast<double>(cut) * scale;
  const double frac = n > 0 ? static_cast<double>(size) / static_cast<double>(n) : 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  switch (o.kind) {
    case Objective::Kind::CheegerRatio: {
      const double bal = std::min(frac, 1.0 - frac);
      if (size == 0 || size >= n) return {inf, true};
      return {gtv_value / bal, false};
    }
    case Objective::Kind::RatioCut: {
      if (size == 0 || size >= n) return {inf, true};
      return {gtv_value / (frac * (1.0 - frac)), false};
    }
    case Objective::Kind::Modularity:
      return {gtv_value + o.gamma * (frac * frac + (1.0 - frac) * (1.0 - frac)), false};
  }
  return {inf, true};
}

ObjectiveValue objective(const ProximityGraph& g, std::span<const int> subset,
                         const Objective& o) {
  const auto cb = cut_and_balance(g, subset);
  return objective_from_counts(o, cb.cut, cb.size, g.size(), g.functional_scale());
}

}  // namespace cheeger
