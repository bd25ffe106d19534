#pragma once

#include "cheeger/manifold.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cheeger {

/// Cell-centred quadrature on a reference manifold with weights summing to 1.
///
/// Circle: N equal arcs. FlatTorus2: N x N squares in (u, v). Sphere2:
/// equal-height polar bands split into roughly square cells, alternate bands
/// staggered by half a cell. Every grid has an even number of bands so
/// half-arcs, axis strips and the equator fall on cell boundaries.
class QuadratureGrid {
 public:
  /// Smallest even resolution with intrinsic cell side <= max_spacing.
  static QuadratureGrid with_spacing(const Manifold& m, double max_spacing);
  static QuadratureGrid with_resolution(const Manifold& m, int resolution);

  const Manifold& manifold() const { return manifold_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const Point> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  const Point& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  /// Intrinsic cell side (geodesic length units).
  double spacing() const { return spacing_; }
  int resolution() const { return resolution_; }
  /// Geodesic distance from node i to the farthest point of its cell.
  double cell_radius(std::size_t i) const { return radius_[i]; }
  double max_cell_radius() const { return max_radius_; }

  /// q^m equal-volume sub-cell centres of cell i.
  std::vector<Point> sub_points(std::size_t i, int q) const;

  /// Node values of f.
  std::vector<double> sample(const std::function<double(const Point&)>& f) const;
  /// Sum of w_i v_i with compensated summation.
  double integrate(std::span<const double> values) const;

  /// Chart box [lo0, hi0] x [lo1, hi1] of cell i.
  struct Box {
    double lo0, hi0, lo1, hi1;
  };
  const Box& box(std::size_t i) const { return boxes_[i]; }

 private:
  explicit QuadratureGrid(const Manifold& m) : manifold_(m) {}

  Manifold manifold_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  std::vector<Box> boxes_;
  std::vector<double> radius_;
  double spacing_ = 0.0;
  double max_radius_ = 0.0;
  int resolution_ = 0;
};

/// Real function on the manifold with optional analytic side information.
struct ContinuumFunction {
  std::function<double(const Point&)> value;
  /// Riemannian gradient norm |grad f|(x), when known in closed form.
  std::function<double(const Point&)> gradient_norm;
  /// Known sup-norm bound.
  std::optional<double> sup_bound;
  /// Known total variation (closed form for reference indicators).
  std::optional<double> total_variation;

  double operator()(const Point& x) const { return value(x); }

  static ContinuumFunction constant(double c);
  /// Indicator of a reference family member; TV is its exact perimeter.
  static ContinuumFunction indicator(const Manifold& m, const FamilyMember& member);
};

/// Normalized bump phi(t) = c_m exp(-1/(1-t^2)) on [0,1), with
/// int_{R^m} phi(|x|) dx = 1, and bandwidth a: phi_a(t) = a^-m phi(t/a).
class SmoothingKernel {
 public:
  SmoothingKernel(int m, double bandwidth);

  int dim() const { return m_; }
  double bandwidth() const { return a_; }
  double profile(double t) const;
  double scaled(double t) const;
  /// Normalization constant c_m.
  double normalization() const { return c_; }

 private:
  int m_;
  double a_;
  double c_;
};

/// Volume of the unit (m-1)-sphere: 2, 2 pi, 4 pi for m = 1, 2, 3.
double unit_sphere_area(int m);

}  // namespace cheeger
