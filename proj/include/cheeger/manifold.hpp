#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cheeger {

enum class ManifoldKind { Circle, FlatTorus2, Sphere2 };

/// Ambient coordinates; unused trailing components are zero.
using Point = std::array<double, 4>;

/// Intrinsic chart coordinates.
///   Circle:     (arclength t in [0,1), unused)
///   FlatTorus2: (u, v) in [0,1)^2
///   Sphere2:    (polar angle in [0,pi], azimuth in [0,2pi))
using Chart = std::array<double, 2>;

/// Reference manifold of unit total volume with closed-form geometry.
///
/// Circle: circumference 1, radius 1/(2 pi), embedded in R^2.
/// FlatTorus2: unit square with periodic identification, embedded in R^4 as
///   (cos 2 pi u, sin 2 pi u, cos 2 pi v, sin 2 pi v) / (2 pi) so the metric is flat.
/// Sphere2: radius 1/sqrt(4 pi), embedded in R^3.
class Manifold {
 public:
  static Manifold circle() { return Manifold(ManifoldKind::Circle); }
  static Manifold flat_torus() { return Manifold(ManifoldKind::FlatTorus2); }
  static Manifold sphere() { return Manifold(ManifoldKind::Sphere2); }
  /// Accepts "circle", "flat_torus_2", "sphere_2"; throws ConfigError otherwise.
  static Manifold from_name(std::string_view name);

  explicit Manifold(ManifoldKind kind);

  ManifoldKind kind() const { return kind_; }
  std::string_view name() const;
  int intrinsic_dim() const { return kind_ == ManifoldKind::Circle ? 1 : 2; }
  int ambient_dim() const;
  /// Radius of the embedded circle(s)/sphere.
  double scale() const { return scale_; }

  /// Largest admissible graph length scale. Conservative; not a derived bound.
  double epsilon0() const { return 0.25; }
  /// Largest admissible non-local / smoothing bandwidth.
  double h_max() const { return 0.25; }

  Point embed(const Chart& c) const;
  Chart chart(const Point& x) const;
  double geodesic_distance(const Point& x, const Point& y) const;
  double euclidean_distance(const Point& x, const Point& y) const;
  double constraint_residual(const Point& x) const;

  /// Geodesic from x with initial velocity (t1, t2) in the orthonormal frame
  /// returned by frame(); for the circle only t1 is used.
  Point exp_map(const Point& x, double t1, double t2 = 0.0) const;
  /// Orthonormal tangent frame at x in ambient coordinates (circle: one vector).
  std::array<Point, 2> frame(const Point& x) const;

  /// Volume and perimeter of a geodesic ball of radius r (r below the
  /// injectivity radius).
  double ball_volume(double r) const;
  double ball_perimeter(double r) const;
  /// Inverse of ball_volume.
  double ball_radius_for_volume(double vol) const;

  /// Diameter in the geodesic metric.
  double diameter() const;

  std::vector<Point> sample_points(std::size_t n, std::uint64_t seed) const;

  bool operator==(const Manifold& o) const { return kind_ == o.kind_; }

 private:
  ManifoldKind kind_;
  double scale_;
};

/// A set from the known Cheeger minimizer family of a reference manifold.
///   Circle:     half-arc {t : (t - center + 1/4) mod 1 in [0, 1/2)}
///   FlatTorus2: strip {x : (coord_axis(x) - offset) mod 1 in [0, 1/2)}
///   Sphere2:    hemisphere {x : <x, pole> > 0}
struct FamilyMember {
  ManifoldKind kind = ManifoldKind::Circle;
  double center = 0.0;
  int axis = 0;
  double offset = 0.0;
  std::array<double, 3> pole{0.0, 0.0, 1.0};

  static FamilyMember half_arc(double center);
  static FamilyMember strip(int axis, double offset);
  static FamilyMember hemisphere(const std::array<double, 3>& pole);

  bool contains(const Manifold& m, const Point& x) const;
};

/// Closed-form continuum Cheeger data for a reference manifold.
class CheegerReference {
 public:
  explicit CheegerReference(const Manifold& m) : manifold_(m) {}

  const Manifold& manifold() const { return manifold_; }
  double constant() const;
  /// Minimal perimeter among sets of volume v in (0,1).
  double isoperimetric(double v) const;
  /// Perimeter of every family member (= constant()/2).
  double member_perimeter() const { return 0.5 * constant(); }
  double member_volume() const { return 0.5; }
  FamilyMember canonical_member() const;

 private:
  Manifold manifold_;
};

CheegerReference continuum_cheeger(const Manifold& m);

/// Sample points with the seed that produced them. A cloud built from
/// explicit coordinates has no manifold and carries its own intrinsic
/// dimension for graph rescaling.
struct PointCloud {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::optional<Manifold> manifold;
  int ambient_dim = 0;
  int intrinsic_dim = 0;

  std::size_t size() const { return points.size(); }
};

/// n i.i.d. uniform samples; a pure function of (manifold, n, seed).
PointCloud sample(const Manifold& m, std::size_t n, std::uint64_t seed);

PointCloud cloud_from_points(std::vector<Point> points, int ambient_dim, int intrinsic_dim);

}  // namespace cheeger
