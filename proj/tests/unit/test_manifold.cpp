#include "cheeger/error.hpp"
#include "cheeger/manifold.hpp"
#include "cheeger/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace cheeger;

namespace {

double norm2(const Point& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }

}  // namespace

TEST(Manifold, CirclePointsLieOnCircle) {
  const auto m = Manifold::circle();
  const auto cloud = sample(m, 4, 17);
  ASSERT_EQ(cloud.size(), 4u);
  for (const auto& x : cloud.points) {
    EXPECT_NEAR(norm2(x), m.scale() * m.scale(), 1e-15);
    EXPECT_LT(m.constraint_residual(x), 1e-14);
  }
}

TEST(Manifold, SphereHemisphereMassIsHalf) {
  const auto m = Manifold::sphere();
  const std::size_t n = 100000;
  const auto cloud = sample(m, n, 5);
  std::size_t inside = 0;
  for (const auto& x : cloud.points) inside += (x[0] + 0.3 * x[1] - 0.2 * x[2]) > 0.0;
  const double frac = static_cast<double>(inside) / static_cast<double>(n);
  EXPECT_NEAR(frac, 0.5, 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST(Manifold, TorusSamplingIsDeterministic) {
  const auto m = Manifold::flat_torus();
  const auto a = sample(m, 10000, 99);
  const auto b = sample(m, 10000, 99);
  ASSERT_EQ(a.points, b.points);
  const auto c = sample(m, 10000, 100);
  EXPECT_NE(a.points, c.points);
}

TEST(Manifold, CircleAntipodalDistance) {
  const auto m = Manifold::circle();
  EXPECT_NEAR(m.geodesic_distance(m.embed({0.1, 0}), m.embed({0.6, 0})), 0.5, 1e-12);
}

TEST(Manifold, TorusWraparoundDistance) {
  const auto m = Manifold::flat_torus();
  const double d = m.geodesic_distance(m.embed({0.1, 0.1}), m.embed({0.9, 0.9}));
  // Oracle: minimum over the 9 lattice images.
  double best = 1e9;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::hypot(0.9 + i - 0.1, 0.9 + j - 0.1));
    }
  }
  EXPECT_NEAR(d, best, 1e-12);
  EXPECT_NEAR(d, std::sqrt(0.08), 1e-12);
}

TEST(Manifold, SpherePoleToEquator) {
  const auto m = Manifold::sphere();
  const double r = 1.0 / std::sqrt(4.0 * kPi);
  const Point pole{0, 0, r, 0};
  const Point eq{r, 0, 0, 0};
  EXPECT_NEAR(m.geodesic_distance(pole, eq), 0.5 * kPi * r, 1e-12);
  // Oracle: arc length of the quarter great circle by quadrature.
  const double len = integrate([&](double t) { return r; }, 0.0, 0.5 * kPi);
  EXPECT_NEAR(m.geodesic_distance(pole, eq), len, 1e-12);
}

TEST(Manifold, ChartRoundTrip) {
  std::mt19937_64 rng(3);
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    for (int k = 0; k < 100; ++k) {
      const auto x = m.sample_points(1, rng())[0];
      const auto y = m.embed(m.chart(x));
      for (int d = 0; d < 4; ++d) EXPECT_NEAR(x[d], y[d], 1e-12);
    }
  }
}

TEST(Manifold, GeodesicDominatesChordAndIsSymmetric) {
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    const auto cloud = sample(m, 200, 11);
    for (std::size_t i = 0; i + 1 < cloud.size(); ++i) {
      const auto& x = cloud.points[i];
      const auto& y = cloud.points[i + 1];
      const double g = m.geodesic_distance(x, y);
      EXPECT_GE(g + 1e-14, m.euclidean_distance(x, y));
      EXPECT_DOUBLE_EQ(g, m.geodesic_distance(y, x));
      EXPECT_LE(g, m.diameter() + 1e-12);
    }
  }
}

TEST(Manifold, ExpMapMovesGeodesicDistance) {
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    const auto x = m.sample_points(1, 8)[0];
    const auto y = m.exp_map(x, 0.03, m.intrinsic_dim() == 2 ? 0.04 : 0.0);
    const double expected = m.intrinsic_dim() == 2 ? 0.05 : 0.03;
    EXPECT_NEAR(m.geodesic_distance(x, y), expected, 1e-10);
    EXPECT_LT(m.constraint_residual(y), 1e-12);
  }
}

TEST(Manifold, BallVolumeInverse) {
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    for (double v : {0.001, 0.02, 0.1, 0.3}) {
      EXPECT_NEAR(m.ball_volume(m.ball_radius_for_volume(v)), v, 1e-12);
    }
  }
  // Spherical cap area 2 pi R^2 (1 - cos(r / R)).
  const auto s = Manifold::sphere();
  const double r = 0.2;
  EXPECT_NEAR(s.ball_volume(r), 2 * kPi * s.scale() * s.scale() * (1 - std::cos(r / s.scale())), 1e-14);
}

TEST(Manifold, ContinuumConstants) {
  EXPECT_DOUBLE_EQ(continuum_cheeger(Manifold::circle()).constant(), 4.0);
  EXPECT_DOUBLE_EQ(continuum_cheeger(Manifold::flat_torus()).constant(), 4.0);
  EXPECT_NEAR(continuum_cheeger(Manifold::sphere()).constant(), 2.0 * std::sqrt(kPi), 1e-14);
}

TEST(Manifold, ConstantsMatchGridSearchOverProfile) {
  // Oracle: minimize I(v) / min(v, 1 - v) with the isoperimetric profiles
  // written out independently.
  const double R = 1.0 / std::sqrt(4.0 * kPi);
  auto sphere_profile = [&](double v) {
    // Cap of area v: 2 pi R^2 (1 - cos t) = v, boundary 2 pi R sin t.
    const double c = 1.0 - v / (2.0 * kPi * R * R);
    return 2.0 * kPi * R * std::sqrt(std::max(0.0, 1.0 - c * c));
  };
  auto torus_profile = [](double v) {
    const double w = std::min(v, 1.0 - v);
    return std::min(2.0 * std::sqrt(kPi * w), 2.0);
  };
  auto circle_profile = [](double) { return 2.0; };
  struct Case {
    Manifold m;
    std::function<double(double)> profile;
  };
  for (const auto& c : {Case{Manifold::circle(), circle_profile}, Case{Manifold::flat_torus(), torus_profile},
                        Case{Manifold::sphere(), sphere_profile}}) {
    double best = 1e300;
    const int N = 200000;
    for (int i = 1; i < N; ++i) {
      const double v = static_cast<double>(i) / N;
      best = std::min(best, c.profile(v) / std::min(v, 1.0 - v));
      EXPECT_NEAR(continuum_cheeger(c.m).isoperimetric(v), c.profile(v), 1e-9);
    }
    EXPECT_NEAR(best / continuum_cheeger(c.m).constant(), 1.0, 1e-6) << c.m.name();
  }
}

TEST(Manifold, FromNameRejectsUnknown) {
  EXPECT_EQ(Manifold::from_name("sphere_2").kind(), ManifoldKind::Sphere2);
  try {
    Manifold::from_name("klein_bottle");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
  }
}

TEST(Manifold, FamilyMembersHaveHalfMass) {
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    const auto member = CheegerReference(m).canonical_member();
    const auto cloud = sample(m, 40000, 21);
    std::size_t in = 0;
    for (const auto& x : cloud.points) in += member.contains(m, x);
    EXPECT_NEAR(static_cast<double>(in) / 40000.0, 0.5, 3.0 * 0.5 / 200.0);
  }
}
