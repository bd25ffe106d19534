#pragma once

#include "cheeger/error.hpp"
#include "cheeger/manifold.hpp"
#include "cheeger/proximity_graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

enum class SolverKind { Exact, ArcSweep, SpectralSweep, LocalSearch, Pipeline };
enum class Certificate { GlobalOptimum, FamilyOptimum, Heuristic };

std::string to_string(SolverKind s);
std::string to_string(Certificate c);

/// A bipartition stored by the side containing vertex 0.
struct CutResult {
  std::vector<int> subset;
  Objective objective;
  double objective_value = 0.0;
  double gtv = 0.0;
  double balance = 0.0;
  std::int64_t cut = 0;
  SolverKind solver = SolverKind::Exact;
  Certificate certificate = Certificate::Heuristic;
  double elapsed = 0.0;
  std::optional<double> eigen_residual;
  /// Set when the eigensolver failed and a fallback produced the result.
  bool degraded = false;
};

/// Builds a CutResult for the given membership (canonicalized to contain
/// vertex 0) with all values recomputed from the graph.
CutResult make_cut_result(const ProximityGraph& g, std::span<const std::uint8_t> mask,
                          const Objective& o, SolverKind solver, Certificate cert);

/// Lexicographic comparison of two canonical subsets given as masks.
bool lexicographically_smaller(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Relative tie tolerance used when comparing objective values.
inline constexpr double kTieTolerance = 1e-12;
bool objective_less(double a, double b);
bool objective_tie(double a, double b);

/// Global optimum by enumerating the 2^(n-1) bipartitions; n <= 24.
CutResult solve_exact(const ProximityGraph& g, const Objective& o);
inline constexpr std::size_t kExactSizeLimit = 24;

/// Optimum over cuts whose subset is a contiguous arc of the angular order.
/// Requires a cloud sampled on the circle.
CutResult solve_arc_sweep(const ProximityGraph& g, const PointCloud& cloud, const Objective& o);

struct SpectralOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eed;
  /// Lowest non-trivial Laplacian eigenvectors swept (Fiedler first).
  int vectors = 4;
  int max_krylov = 400;
};

struct EigenPairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  double residual = 0.0;  // relative residual of the Fiedler pair
  int iterations = 0;     // operator applications
  bool converged = false;
};

/// Lowest eigenpairs of L = D - W orthogonal to constants via restarted
/// Lanczos with full reorthogonalization and a seeded start vector.
EigenPairs laplacian_eigenpairs(const ProximityGraph& g, const SpectralOptions& opts);

class EigenNotConverged : public Error {
 public:
  EigenNotConverged(int iterations, double residual, EigenPairs best);
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }
  const EigenPairs& best() const { return best_; }

 private:
  int iterations_;
  double residual_;
  EigenPairs best_;
};

/// Best threshold cut of a vertex vector over all n-1 sublevel prefixes.
CutResult sweep_cut(const ProximityGraph& g, std::span<const double> values, const Objective& o);

/// Connected component labels (ascending from the component of vertex 0).
std::vector<int> connected_components(const ProximityGraph& g, int* count = nullptr);

/// Fiedler-vector sweep. Disconnected graphs return the component of vertex 0
/// directly. Throws EigenNotConverged.
CutResult solve_spectral_sweep(const ProximityGraph& g, const Objective& o,
                               const SpectralOptions& opts = {});

/// Greedy best-improvement single-vertex moves; never increases the objective.
CutResult refine_local_search(const ProximityGraph& g, const CutResult& start, const Objective& o,
                              std::size_t max_passes);

struct PipelineOptions {
  SpectralOptions spectral;
  std::size_t max_passes = 0;  // 0 means n
};

/// Spectral sweep (plus arc sweep when `cloud` lies on the circle), each
/// refined by local search; returns the best candidate.
CutResult solve_pipeline(const ProximityGraph& g, const Objective& o,
                         const PipelineOptions& opts = {}, const PointCloud* cloud = nullptr);

}  // namespace cheeger
