#pragma once

#include "cheeger/cut_solvers.hpp"
#include "cheeger/manifold.hpp"
#include "cheeger/nonlocal_tv.hpp"
#include "cheeger/quadrature.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

/// Nearest-sample assignment standing in for the transport map T_n.
struct TransportSurrogate {
  std::vector<int> assignment;
  double sup_displacement = 0.0;
};

/// Geodesic nearest sample (ties to the smallest index) for every node.
TransportSurrogate transport_assign(const PointCloud& cloud, std::span<const Point> nodes);

/// I_a u = Lambda_a (u o T_n), with the surrogate built over grid.nodes().
ContinuumFunction interpolate(std::span<const double> u, const TransportSurrogate& surrogate,
                              const SmoothingKernel& kernel, const QuadratureGrid& grid);
/// Same, evaluated at the grid nodes.
std::vector<double> interpolate_on_nodes(std::span<const double> u,
                                         const TransportSurrogate& surrogate,
                                         const SmoothingKernel& kernel, const QuadratureGrid& grid);

struct Asymmetry {
  double value = 0.0;
  FamilyMember member;
};

/// min over the reference family of || v - 1_{E*(p)} ||_L1 for node values v.
Asymmetry fraenkel_asymmetry_values(std::span<const double> values, const CheegerReference& ref,
                                    const QuadratureGrid& grid);
Asymmetry fraenkel_asymmetry(const ContinuumFunction& set_indicator, const CheegerReference& ref,
                             const QuadratureGrid& grid);
/// || v - 1_{member} ||_L1 on the grid.
double symmetric_difference(std::span<const double> values, const FamilyMember& member,
                            const QuadratureGrid& grid);

struct FixMassResult {
  ContinuumFunction set;
  double volume = 0.0;
  Point center{};
  double radius = 0.0;
  bool added = true;
  /// Perimeter of the ball used, C r^(m-1).
  double perimeter_increment = 0.0;
  /// Volume of the ball part added to (or removed from) the set.
  double changed_volume = 0.0;
};

/// Adds (mass > 0) or removes (mass < 0) a geodesic ball so the volume
/// becomes volume + mass. `volume` is the exact volume of `set`.
FixMassResult fix_mass(const ContinuumFunction& set, double volume, double mass,
                       const Manifold& m, const QuadratureGrid& grid);

/// Volume of B(x, r) inside (inside = true) or outside a set, by geodesic
/// polar ray casting with adaptive quadrature over directions.
double ball_set_volume(const Manifold& m, const ContinuumFunction& set, const Point& x, double r,
                       bool inside);

struct EpsilonRule {
  double c = 1.0;
  double exponent = 0.5;
  double operator()(std::size_t n) const;
};

struct UstatRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;
  double threshold_base = 0.0;  // sigma TV(f) (1 + 10 eps^2)
  std::vector<double> zeta;
  std::vector<double> exceedance;
};
struct UstatReport {
  std::string manifold;
  double sigma_tv = 0.0;
  std::vector<UstatRow> rows;
};

/// GTV_{n,eps}(f) over `trials` clouds per n for a reference indicator.
UstatReport ustat_concentration(const Manifold& m, const FamilyMember& member,
                                std::span<const std::size_t> n_list, const EpsilonRule& rule,
                                int trials, std::uint64_t seed, std::span<const double> zeta_grid,
                                int workers = 1);

struct CutError {
  double l1_error = 0.0;
  FamilyMember member;
  double discrete_error = 0.0;
  double sup_displacement = 0.0;
  /// || I_a u - 1_{E*} ||_L1 for the matched member; negative when a <= 0.
  double smoothed_error = -1.0;
};

CutError cut_l1_error(const CutResult& cut, const PointCloud& cloud, const CheegerReference& ref,
                      double a, const QuadratureGrid& grid);

struct RateReport {
  std::vector<double> n_values;
  std::vector<double> medians;
  double slope = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int bootstrap = 0;
};

/// OLS of log median error on log n with a seeded bootstrap over trials.
RateReport fit_rate(const std::map<double, std::vector<double>>& errors, std::uint64_t seed = 1,
                    int resamples = 1000);

/// Ordinary least squares slope and intercept.
std::pair<double, double> ols(std::span<const double> x, std::span<const double> y);

struct ExcessRow {
  double t = 0.0;
  double l1_size = 0.0;
  double excess = 0.0;
};
struct ExcessReport {
  std::vector<ExcessRow> rows;
  double slope = 0.0;
  double fitted_c = 0.0;  // min excess / t^2
};

/// Perimeter minus 1 of the periodic graph through (v_k, g_k), v in [0,1).
double graph_perimeter_excess(std::span<const std::pair<double, double>> vertices);
/// Width-1/2 torus strip whose right boundary carries a mean-zero
/// up/down tent pair of L1 size t.
ExcessReport perimeter_excess_study(std::span<const double> t_list);

}  // namespace cheeger
