#pragma once

#include "cheeger/manifold.hpp"
#include "cheeger/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

/// sigma_eta = int_{B(0,1)} |z_1| dz for the indicator kernel.
double surface_tension(int m);

struct TvOptions {
  /// Sub-cells per dimension for sphere cell pairs straddling distance h.
  int sub_samples = 4;
};

/// Non-local TV_h by double quadrature over cell pairs within geodesic
/// distance h. Node values are treated as constant on each cell; on the
/// circle and torus cell-pair overlap weights are exact.
double tv_nonlocal(const ContinuumFunction& f, double h, const QuadratureGrid& grid,
                   const TvOptions& opts = {});
double tv_nonlocal_values(std::span<const double> values, double h, const QuadratureGrid& grid,
                          const TvOptions& opts = {});

/// Quadrature of |grad f|, analytic when f.gradient_norm is set, otherwise
/// central differences along the tangent frame with step spacing/8.
double tv_local_smooth(const ContinuumFunction& f, const QuadratureGrid& grid);

/// Perimeter of a reference family member.
double perimeter_reference(const Manifold& m, const FamilyMember& member);

/// Lambda_a f with tau_a taken from the same quadrature, so constants are
/// reproduced exactly.
ContinuumFunction smooth(const ContinuumFunction& f, const SmoothingKernel& kernel,
                         const QuadratureGrid& grid);
/// Lambda_a of the cell-constant function with the given node values.
ContinuumFunction smooth_node_values(std::vector<double> values, const SmoothingKernel& kernel,
                                     const QuadratureGrid& grid);
/// Lambda_a applied to node values, evaluated at the nodes.
std::vector<double> smooth_on_nodes(std::span<const double> values, const SmoothingKernel& kernel,
                                    const QuadratureGrid& grid);

/// Largest central-difference gradient norm of f over the grid nodes.
double max_gradient(const ContinuumFunction& f, const QuadratureGrid& grid);

/// TV(f) / || f - median(f) ||_L1.
double cheeger_functional_form(const ContinuumFunction& f, const QuadratureGrid& grid);
/// L1 median of node values on [0,1] and the attained L1 deviation.
std::pair<double, double> l1_median(std::span<const double> values, const QuadratureGrid& grid);

/// Grid selection shared by the property checks: a fixed resolution, or
/// spacing = fraction * (smallest length scale of the check).
struct GridPolicy {
  int resolution = 0;
  double spacing_fraction = 0.125;
  QuadratureGrid make(const Manifold& m, double length_scale) const;
};

inline constexpr double kCheckConstant = 10.0;

struct BiasRow {
  double h = 0.0;
  double tv_h = 0.0;
  double sigma_tv = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool violated = false;
};
struct BiasReport {
  std::string manifold;
  std::vector<BiasRow> rows;
  double fitted_constant = 0.0;  // max over h of (ratio - 1) / h^2
  bool pass = true;
};
BiasReport check_bias_inequality(const Manifold& m, const FamilyMember& member,
                                 std::span<const double> h_list, const GridPolicy& policy = {});

struct MonotonicityRow {
  double a = 0.0;
  double tv_a = 0.0;
  double ratio = 0.0;
  bool violated = false;
};
struct MonotonicityReport {
  std::string manifold;
  double h = 0.0;
  double tv_h = 0.0;
  bool degenerate = false;
  std::vector<MonotonicityRow> rows;
  double fitted_constant = 0.0;  // max ratio
  bool pass = true;
};
MonotonicityReport check_monotonicity(const Manifold& m, const ContinuumFunction& f, double h,
                                      std::span<const double> a_list,
                                      const GridPolicy& policy = {});

struct SmoothingChainReport {
  std::string manifold;
  double h = 0.0;
  double a = 0.0;
  double sigma_tv_smoothed = 0.0;
  double tv_h = 0.0;
  double sup_norm = 0.0;
  double ratio = 0.0;  // sigma TV(Lambda_a f) / TV_h(f)
  /// sigma TV(Lambda_a f) - [(1 + C(h^2 + a)) TV_h(f) + C(h/a^2 + a) |f|_inf]
  double bound_residual = 0.0;
  double l1_distance = 0.0;
  double l1_ratio = 0.0;  // |Lambda_a f - f|_L1 / (a TV_h(f))
  double max_gradient = 0.0;
  double gradient_ratio = 0.0;  // a * max_gradient / |f|_inf
  bool pass = true;
};
SmoothingChainReport check_smoothing_chain(const Manifold& m, const ContinuumFunction& f, double h,
                                           double a, const GridPolicy& policy = {});

struct VolumeFloorRow {
  std::string label;
  double h = 0.0;
  double volume = 0.0;
  double tv_h = 0.0;
  double ratio = 0.0;  // TV_h / (sigma min(vol, 1 - vol))
  bool violated = false;
};
struct VolumeFloorReport {
  std::string manifold;
  double ratio_cap = 0.0;
  double beta0 = 0.05;
  std::vector<VolumeFloorRow> rows;
  bool pass = true;
};
/// Builds arcs / strips / caps of several volumes and flags any with
/// TV_h ratio <= 2 C_M and min volume < beta0.
VolumeFloorReport check_volume_floor(const Manifold& m, std::span<const double> h_list,
                                     const GridPolicy& policy = {});

}  // namespace cheeger
