#include "cheeger/manifold.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"

#include <cmath>
#include <random>

namespace cheeger {

namespace {

double default_scale(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Circle: return 1.0 / (2.0 * kPi);
    case ManifoldKind::FlatTorus2: return 1.0 / (2.0 * kPi);
    case ManifoldKind::Sphere2: return 1.0 / std::sqrt(4.0 * kPi);
  }
  return 1.0;
}

// Unsigned angle between two planar vectors, accurate for tiny angles.
double planar_angle(double x0, double x1, double y0, double y1) {
  return std::abs(std::atan2(x0 * y1 - x1 * y0, x0 * y0 + x1 * y1));
}

}  // namespace

Manifold::Manifold(ManifoldKind kind) : kind_(kind), scale_(default_scale(kind)) {}

Manifold Manifold::from_name(std::string_view name) {
  if (name == "circle") return circle();
  if (name == "flat_torus_2") return flat_torus();
  if (name == "sphere_2") return sphere();
  throw Error(ErrorCode::Config, "unknown manifold '" + std::string(name) +
                                     "' (expected circle | flat_torus_2 | sphere_2)");
}

std::string_view Manifold::name() const {
  switch (kind_) {
    case ManifoldKind::Circle: return "circle";
    case ManifoldKind::FlatTorus2: return "flat_torus_2";
    case ManifoldKind::Sphere2: return "sphere_2";
  }
  return "";
}

int Manifold::ambient_dim() const {
  switch (kind_) {
    case ManifoldKind::Circle: return 2;
    case ManifoldKind::FlatTorus2: return 4;
    case ManifoldKind::Sphere2: return 3;
  }
  return 0;
}

Point Manifold::embed(const Chart& c) const {
  const double r = scale_;
  switch (kind_) {
    case ManifoldKind::Circle: {
      const double a = 2.0 * kPi * c[0];
      return {r * std::cos(a), r * std::sin(a), 0.0, 0.0};
    }
    case ManifoldKind::FlatTorus2: {
      const double a = 2.0 * kPi * c[0];
      const double b = 2.0 * kPi * c[1];
      return {r * std::cos(a), r * std::sin(a), r * std::cos(b), r * std::sin(b)};
    }
    case ManifoldKind::Sphere2: {
      const double st = std::sin(c[0]);
      return {r * st * std::cos(c[1]), r * st * std::sin(c[1]), r * std::cos(c[0]), 0.0};
    }
  }
  return {};
}

Chart Manifold::chart(const Point& x) const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return {wrap_unit(std::atan2(x[1], x[0]) / (2.0 * kPi)), 0.0};
    case ManifoldKind::FlatTorus2:
      return {wrap_unit(std::atan2(x[1], x[0]) / (2.0 * kPi)),
              wrap_unit(std::atan2(x[3], x[2]) / (2.0 * kPi))};
    case ManifoldKind::Sphere2: {
      const double rho = std::hypot(x[0], x[1]);
      double phi = std::atan2(x[1], x[0]);
      if (phi < 0.0) phi += 2.0 * kPi;
      return {std::atan2(rho, x[2]), phi};
    }
  }
  return {};
}

double Manifold::geodesic_distance(const Point& x, const Point& y) const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return scale_ * planar_angle(x[0], x[1], y[0], y[1]);
    case ManifoldKind::FlatTorus2: {
      const double du = scale_ * planar_angle(x[0], x[1], y[0], y[1]);
      const double dv = scale_ * planar_angle(x[2], x[3], y[2], y[3]);
      return std::hypot(du, dv);
    }
    case ManifoldKind::Sphere2: {
      const double cx = x[1] * y[2] - x[2] * y[1];
      const double cy = x[2] * y[0] - x[0] * y[2];
      const double cz = x[0] * y[1] - x[1] * y[0];
      const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
      const double dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
      return scale_ * std::atan2(cross, dot);
    }
  }
  return 0.0;
}

double Manifold::euclidean_distance(const Point& x, const Point& y) const {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

double Manifold::constraint_residual(const Point& x) const {
  const double r2 = scale_ * scale_;
  switch (kind_) {
    case ManifoldKind::Circle:
      return std::abs(x[0] * x[0] + x[1] * x[1] - r2) + std::abs(x[2]) + std::abs(x[3]);
    case ManifoldKind::FlatTorus2:
      return std::abs(x[0] * x[0] + x[1] * x[1] - r2) + std::abs(x[2] * x[2] + x[3] * x[3] - r2);
    case ManifoldKind::Sphere2:
      return std::abs(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - r2) + std::abs(x[3]);
  }
  return 0.0;
}

std::array<Point, 2> Manifold::frame(const Point& x) const {
  switch (kind_) {
    case ManifoldKind::Circle: {
      const double r = std::hypot(x[0], x[1]);
      return {Point{-x[1] / r, x[0] / r, 0.0, 0.0}, Point{}};
    }
    case ManifoldKind::FlatTorus2: {
      const double r1 = std::hypot(x[0], x[1]);
      const double r2 = std::hypot(x[2], x[3]);
      return {Point{-x[1] / r1, x[0] / r1, 0.0, 0.0}, Point{0.0, 0.0, -x[3] / r2, x[2] / r2}};
    }
    case ManifoldKind::Sphere2: {
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      const std::array<double, 3> n{x[0] / r, x[1] / r, x[2] / r};
      const double rho = std::hypot(n[0], n[1]);
      if (rho < 1e-8) {
        return {Point{1.0, 0.0, 0.0, 0.0}, Point{0.0, n[2] > 0 ? 1.0 : -1.0, 0.0, 0.0}};
      }
      // e_theta (southward) and e_phi (eastward).
      const Point e1{n[2] * n[0] / rho, n[2] * n[1] / rho, -rho, 0.0};
      const Point e2{-n[1] / rho, n[0] / rho, 0.0, 0.0};
      return {e1, e2};
    }
  }
  return {};
}

Point Manifold::exp_map(const Point& x, double t1, double t2) const {
  switch (kind_) {
    case ManifoldKind::Circle: {
      Chart c = chart(x);
      c[0] = wrap_unit(c[0] + t1);
      return embed(c);
    }
    case ManifoldKind::FlatTorus2: {
      Chart c = chart(x);
      c[0] = wrap_unit(c[0] + t1);
      c[1] = wrap_unit(c[1] + t2);
      return embed(c);
    }
    case ManifoldKind::Sphere2: {
      const double s = std::hypot(t1, t2);
      if (s == 0.0) return x;
      const auto f = frame(x);
      const double ang = s / scale_;
      const double ca = std::cos(ang);
      const double sa = std::sin(ang);
      Point y{};
      for (int k = 0; k < 3; ++k) {
        const double dir = (t1 * f[0][k] + t2 * f[1][k]) / s;
        y[k] = ca * x[k] + scale_ * sa * dir;
      }
      return y;
    }
  }
  return x;
}

double Manifold::ball_volume(double r) const {
  switch (kind_) {
    case ManifoldKind::Circle: return std::min(2.0 * r, 1.0);
    case ManifoldKind::FlatTorus2: return kPi * r * r;
    case ManifoldKind::Sphere2:
      return 2.0 * kPi * scale_ * scale_ * (1.0 - std::cos(std::min(r / scale_, kPi)));
  }
  return 0.0;
}

double Manifold::ball_perimeter(double r) const {
  switch (kind_) {
    case ManifoldKind::Circle: return r > 0.0 && r < 0.5 ? 2.0 : 0.0;
    case ManifoldKind::FlatTorus2: return 2.0 * kPi * r;
    case ManifoldKind::Sphere2: return 2.0 * kPi * scale_ * std::sin(std::min(r / scale_, kPi));
  }
  return 0.0;
}

double Manifold::ball_radius_for_volume(double vol) const {
  switch (kind_) {
    case ManifoldKind::Circle: return 0.5 * vol;
    case ManifoldKind::FlatTorus2: return std::sqrt(vol / kPi);
    case ManifoldKind::Sphere2: {
      const double c = 1.0 - vol / (2.0 * kPi * scale_ * scale_);
      return scale_ * std::acos(std::clamp(c, -1.0, 1.0));
    }
  }
  return 0.0;
}

double Manifold::diameter() const {
  switch (kind_) {
    case ManifoldKind::Circle: return 0.5;
    case ManifoldKind::FlatTorus2: return std::sqrt(0.5);
    case ManifoldKind::Sphere2: return kPi * scale_;
  }
  return 0.0;
}

std::vector<Point> Manifold::sample_points(std::size_t n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind_) {
      case ManifoldKind::Circle:
        pts.push_back(embed({unit_uniform(rng), 0.0}));
        break;
      case ManifoldKind::FlatTorus2: {
        const double u = unit_uniform(rng);
        const double v = unit_uniform(rng);
        pts.push_back(embed({u, v}));
        break;
      }
      case ManifoldKind::Sphere2: {
        double g0, g1, g2, norm;
        do {
          auto [a, b] = normal_pair(rng);
          auto [c, d] = normal_pair(rng);
          (void)d;
          g0 = a;
          g1 = b;
          g2 = c;
          norm = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
        } while (norm < 1e-12);
        pts.push_back({scale_ * g0 / norm, scale_ * g1 / norm, scale_ * g2 / norm, 0.0});
        break;
      }
    }
  }
  return pts;
}

FamilyMember FamilyMember::half_arc(double center) {
  FamilyMember f;
  f.kind = ManifoldKind::Circle;
  f.center = wrap_unit(center);
  return f;
}

FamilyMember FamilyMember::strip(int axis, double offset) {
  FamilyMember f;
  f.kind = ManifoldKind::FlatTorus2;
  f.axis = axis;
  f.offset = wrap_unit(offset);
  return f;
}

FamilyMember FamilyMember::hemisphere(const std::array<double, 3>& pole) {
  FamilyMember f;
  f.kind = ManifoldKind::Sphere2;
  const double n = std::sqrt(pole[0] * pole[0] + pole[1] * pole[1] + pole[2] * pole[2]);
  f.pole = {pole[0] / n, pole[1] / n, pole[2] / n};
  return f;
}

bool FamilyMember::contains(const Manifold& m, const Point& x) const {
  switch (kind) {
    case ManifoldKind::Circle:
      return wrap_unit(m.chart(x)[0] - center + 0.25) < 0.5;
    case ManifoldKind::FlatTorus2:
      return wrap_unit(m.chart(x)[axis] - offset) < 0.5;
    case ManifoldKind::Sphere2:
      return x[0] * pole[0] + x[1] * pole[1] + x[2] * pole[2] > 0.0;
  }
  return false;
}

double CheegerReference::constant() const {
  switch (manifold_.kind()) {
    case ManifoldKind::Circle: return 4.0;
    case ManifoldKind::FlatTorus2: return 4.0;
    case ManifoldKind::Sphere2: return 2.0 * std::sqrt(kPi);
  }
  return 0.0;
}

double CheegerReference::isoperimetric(double v) const {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  const double w = std::min(v, 1.0 - v);
  switch (manifold_.kind()) {
    case ManifoldKind::Circle: return 2.0;
    case ManifoldKind::FlatTorus2: return std::min(2.0 * std::sqrt(kPi * w), 2.0);
    case ManifoldKind::Sphere2: return 2.0 * std::sqrt(kPi) * std::sqrt(v * (1.0 - v));
  }
  return 0.0;
}

FamilyMember CheegerReference::canonical_member() const {
  switch (manifold_.kind()) {
    case ManifoldKind::Circle: return FamilyMember::half_arc(0.25);
    case ManifoldKind::FlatTorus2: return FamilyMember::strip(0, 0.0);
    case ManifoldKind::Sphere2: return FamilyMember::hemisphere({0.0, 0.0, 1.0});
  }
  return {};
}

CheegerReference continuum_cheeger(const Manifold& m) { return CheegerReference(m); }

PointCloud sample(const Manifold& m, std::size_t n, std::uint64_t seed) {
  PointCloud cloud;
  cloud.points = m.sample_points(n, seed);
  cloud.seed = seed;
  cloud.manifold = m;
  cloud.ambient_dim = m.ambient_dim();
  cloud.intrinsic_dim = m.intrinsic_dim();
  return cloud;
}

PointCloud cloud_from_points(std::vector<Point> points, int ambient_dim, int intrinsic_dim) {
  PointCloud cloud;
  cloud.points = std::move(points);
  cloud.ambient_dim = ambient_dim;
  cloud.intrinsic_dim = intrinsic_dim;
  return cloud;
}

}  // namespace cheeger
