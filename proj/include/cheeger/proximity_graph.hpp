#pragma once

#include "cheeger/manifold.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

/// Epsilon-graph with indicator weights w_ij = 1{|x_i - x_j| <= eps}, i != j.
/// Neighbor lists are sorted and stored in CSR form.
class ProximityGraph {
 public:
  ProximityGraph() = default;
  ProximityGraph(std::size_t n, double epsilon, int m, std::vector<std::int64_t> offsets,
                 std::vector<int> targets);

  std::size_t size() const { return n_; }
  double epsilon() const { return epsilon_; }
  int intrinsic_dim() const { return m_; }
  std::span<const int> neighbors(std::size_t i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const {
    return static_cast<std::size_t>(offsets_[i + 1] - offsets_[i]);
  }
  std::size_t edge_count() const { return targets_.size() / 2; }

  /// 1 / (n^2 eps^(m+1)).
  double functional_scale() const;

  /// Optional provenance: manifold of the cloud the graph was built on.
  std::optional<ManifoldKind> manifold;
  std::string cloud_ref;

 private:
  std::size_t n_ = 0;
  double epsilon_ = 0.0;
  int m_ = 1;
  std::vector<std::int64_t> offsets_{0};
  std::vector<int> targets_;
};

/// Spatial-grid construction with cell side eps; expected O(n * avg degree).
ProximityGraph build_graph(const PointCloud& cloud, double epsilon);

/// Graph from explicit undirected edges (i != j); used when loading from disk.
ProximityGraph graph_from_edges(std::size_t n, double epsilon, int m,
                                std::span<const std::pair<int, int>> edges);

/// Graph total variation (1/(n^2 eps^(m+1))) sum_i sum_j w_ij |u_i - u_j|,
/// accumulated in ascending (i, j) order with compensated summation.
double gtv(const ProximityGraph& g, std::span<const double> u);

/// Membership mask from sorted or unsorted vertex indices.
std::vector<std::uint8_t> subset_mask(std::size_t n, std::span<const int> subset);

struct CutAndBalance {
  double gtv = 0.0;       // GTV of the indicator
  double balance = 0.0;   // min(|A|/n, 1 - |A|/n)
  std::int64_t cut = 0;   // number of crossing (unordered) edges
  std::size_t size = 0;   // |A|
};

CutAndBalance cut_and_balance(const ProximityGraph& g, std::span<const int> subset);
std::int64_t cut_count(const ProximityGraph& g, std::span<const std::uint8_t> mask);

struct Objective {
  enum class Kind { CheegerRatio, RatioCut, Modularity };
  Kind kind = Kind::CheegerRatio;
  double gamma = 0.0;

  static Objective cheeger() { return {}; }
  static Objective ratio_cut() { return {Kind::RatioCut, 0.0}; }
  static Objective modularity(double gamma) { return {Kind::Modularity, gamma}; }
};

std::string to_string(const Objective& o);
Objective objective_from_name(const std::string& name, double gamma);

struct ObjectiveValue {
  double value = 0.0;
  bool degenerate = false;  // empty/full subset under a ratio objective
};

/// Objective from integer cut data; every solver goes through this so the
/// reported value is reproducible from the subset.
ObjectiveValue objective_from_counts(const Objective& o, std::int64_t cut, std::size_t size,
                                     std::size_t n, double scale);

ObjectiveValue objective(const ProximityGraph& g, std::span<const int> subset,
                         const Objective& o);

}  // namespace cheeger
