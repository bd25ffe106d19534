#include "cheeger/quadrature.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace cheeger {

namespace {

int even_ceil(double x) {
  int n = static_cast<int>(std::ceil(x - 1e-9));
  if (n < 2) n = 2;
  return n % 2 == 0 ? n : n + 1;
}

}  // namespace

QuadratureGrid QuadratureGrid::with_spacing(const Manifold& m, double max_spacing) {
  if (!(max_spacing > 0.0)) throw Error(ErrorCode::Config, "grid spacing must be positive");
  const double extent = m.kind() == ManifoldKind::Sphere2 ? kPi * m.scale() : 1.0;
  return with_resolution(m, even_ceil(extent / max_spacing));
}

QuadratureGrid QuadratureGrid::with_resolution(const Manifold& m, int resolution) {
  if (resolution < 2) throw Error(ErrorCode::Config, "grid resolution must be >= 2");
  if (resolution % 2 != 0) ++resolution;
  QuadratureGrid g(m);
  g.resolution_ = resolution;
  const int n = resolution;
  switch (m.kind()) {
    case ManifoldKind::Circle: {
      const double s = 1.0 / n;
      g.spacing_ = s;
      for (int i = 0; i < n; ++i) {
        g.nodes_.push_back(m.embed({(i + 0.5) * s, 0.0}));
        g.weights_.push_back(s);
        g.boxes_.push_back({i * s, (i + 1) * s, 0.0, 0.0});
        g.radius_.push_back(0.5 * s);
      }
      break;
    }
    case ManifoldKind::FlatTorus2: {
      const double s = 1.0 / n;
      g.spacing_ = s;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          g.nodes_.push_back(m.embed({(i + 0.5) * s, (j + 0.5) * s}));
          g.weights_.push_back(s * s);
          g.boxes_.push_back({i * s, (i + 1) * s, j * s, (j + 1) * s});
          g.radius_.push_back(s * std::sqrt(0.5));
        }
      }
      break;
    }
    case ManifoldKind::Sphere2: {
      const double r = m.scale();
      const double dt = kPi / n;
      g.spacing_ = r * dt;
      for (int b = 0; b < n; ++b) {
        const double t0 = b * dt;
        const double t1 = (b + 1) * dt;
        const double c0 = std::cos(t0);
        const double c1 = std::cos(t1);
        const int k = std::max(3, static_cast<int>(std::lround(2.0 * n * std::sin(0.5 * (t0 + t1)))));
        const double dp = 2.0 * kPi / k;
        const double phase = (b % 2 == 1) ? 0.5 * dp : 0.0;
        const double theta = std::acos(0.5 * (c0 + c1));
        const double w = r * r * (c0 - c1) * dp;
        for (int c = 0; c < k; ++c) {
          const double p0 = phase + c * dp;
          const Point x = m.embed({theta, p0 + 0.5 * dp});
          g.nodes_.push_back(x);
          g.weights_.push_back(w);
          g.boxes_.push_back({t0, t1, p0, p0 + dp});
          double far = 0.0;
          constexpr int kEdge = 8;
          for (int e = 0; e <= kEdge; ++e) {
            const double f = static_cast<double>(e) / kEdge;
            for (const Chart& q : {Chart{t0, p0 + f * dp}, Chart{t1, p0 + f * dp},
                                   Chart{t0 + f * dt, p0}, Chart{t0 + f * dt, p0 + dp}}) {
              far = std::max(far, m.geodesic_distance(x, m.embed(q)));
            }
          }
          g.radius_.push_back(far * 1.01);
        }
      }
      break;
    }
  }
  g.max_radius_ = *std::max_element(g.radius_.begin(), g.radius_.end());
  return g;
}

std::vector<Point> QuadratureGrid::sub_points(std::size_t i, int q) const {
  const Box& b = boxes_[i];
  std::vector<Point> out;
  switch (manifold_.kind()) {
    case ManifoldKind::Circle:
      for (int a = 0; a < q; ++a) {
        out.push_back(manifold_.embed({b.lo0 + (a + 0.5) * (b.hi0 - b.lo0) / q, 0.0}));
      }
      break;
    case ManifoldKind::FlatTorus2:
      for (int a = 0; a < q; ++a) {
        for (int c = 0; c < q; ++c) {
          out.push_back(manifold_.embed({b.lo0 + (a + 0.5) * (b.hi0 - b.lo0) / q,
                                         b.lo1 + (c + 0.5) * (b.hi1 - b.lo1) / q}));
        }
      }
      break;
    case ManifoldKind::Sphere2: {
      const double c0 = std::cos(b.lo0);
      const double c1 = std::cos(b.hi0);
      for (int a = 0; a < q; ++a) {
        const double theta = std::acos(c0 + (a + 0.5) * (c1 - c0) / q);
        for (int c = 0; c < q; ++c) {
          out.push_back(manifold_.embed({theta, b.lo1 + (c + 0.5) * (b.hi1 - b.lo1) / q}));
        }
      }
      break;
    }
  }
  return out;
}

std::vector<double> QuadratureGrid::sample(const std::function<double(const Point&)>& f) const {
  std::vector<double> v(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) v[i] = f(nodes_[i]);
  return v;
}

double QuadratureGrid::integrate(std::span<const double> values) const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc.add(weights_[i] * values[i]);
  return acc.value();
}

ContinuumFunction ContinuumFunction::constant(double c) {
  ContinuumFunction f;
  f.value = [c](const Point&) { return c; };
  f.gradient_norm = [](const Point&) { return 0.0; };
  f.sup_bound = std::abs(c);
  f.total_variation = 0.0;
  return f;
}

ContinuumFunction ContinuumFunction::indicator(const Manifold& m, const FamilyMember& member) {
  ContinuumFunction f;
  f.value = [m, member](const Point& x) { return member.contains(m, x) ? 1.0 : 0.0; };
  f.sup_bound = 1.0;
  f.total_variation = CheegerReference(m).member_perimeter();
  return f;
}

double unit_sphere_area(int m) {
  switch (m) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
  }
  throw Error(ErrorCode::UnsupportedDimension, "dimension must be 1, 2 or 3");
}

SmoothingKernel::SmoothingKernel(int m, double bandwidth) : m_(m), a_(bandwidth), c_(1.0) {
  if (!(bandwidth > 0.0)) throw Error(ErrorCode::Config, "bandwidth must be positive");
  const double radial = cheeger::integrate(
      [m](double t) { return t >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - t * t)) * std::pow(t, m - 1); },
      0.0, 1.0, 20, 64);
  c_ = 1.0 / (unit_sphere_area(m) * radial);
}

double SmoothingKernel::profile(double t) const {
  if (t < 0.0) t = -t;
  if (t >= 1.0) return 0.0;
  return c_ * std::exp(-1.0 / (1.0 - t * t));
}

double SmoothingKernel::scaled(double t) const { return profile(t / a_) / std::pow(a_, m_); }

}  // namespace cheeger
