#include "cheeger/error.hpp"
#include "cheeger/proximity_graph.hpp"
#include "cheeger/spatial_index.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace cheeger;

namespace {

// Brute-force oracles written without the graph's neighbor lists.
double brute_gtv(const PointCloud& c, double eps, const std::vector<double>& u) {
  const double n = static_cast<double>(c.size());
  long double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      double d2 = 0.0;
      for (int k = 0; k < 4; ++k) d2 += (c.points[i][k] - c.points[j][k]) * (c.points[i][k] - c.points[j][k]);
      if (std::sqrt(d2) <= eps) s += std::abs(u[i] - u[j]);
    }
  }
  return static_cast<double>(s) / (n * n * std::pow(eps, c.intrinsic_dim + 1));
}

PointCloud line(std::vector<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0, 0, 0});
  return cloud_from_points(pts, 1, 1);
}

}  // namespace

TEST(ProximityGraph, CircleThreePointEdges) {
  const auto m = Manifold::circle();
  const auto c = cloud_from_points({m.embed({0.0, 0}), m.embed({0.3, 0}), m.embed({0.9, 0})}, 2, 1);
  // Chords: 0.3 -> 2R sin(0.3 pi) = 0.2575, 0.1 -> 0.0984, 0.6 -> 0.3027.
  const auto g = build_graph(c, 0.35);
  ASSERT_EQ(g.edge_count(), 3u);
  const auto g2 = build_graph(c, 0.2);
  ASSERT_EQ(g2.edge_count(), 1u);
  EXPECT_EQ(g2.neighbors(0)[0], 2);
}

TEST(ProximityGraph, LineThreePointEdges) {
  const auto g = build_graph(line({0.0, 0.3, 0.9}), 0.35);
  ASSERT_EQ(g.edge_count(), 1u);
  ASSERT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.neighbors(0)[0], 1);
  EXPECT_EQ(g.degree(2), 0u);
}

TEST(ProximityGraph, LargeEpsilonGivesCompleteGraph) {
  const auto c = sample(Manifold::sphere(), 50, 4);
  const auto g = build_graph(c, 10.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.degree(i), 49u);
}

TEST(ProximityGraph, ZeroEpsilonHasNoEdges) {
  const auto c = sample(Manifold::flat_torus(), 100, 4);
  EXPECT_EQ(build_graph(c, 0.0).edge_count(), 0u);
}

TEST(ProximityGraph, GtvTwoPoints) {
  const auto c = line({0.0, 0.5});
  const auto g = build_graph(c, 1.0);
  const std::vector<double> u{0.0, 1.0};
  EXPECT_NEAR(gtv(g, u), 0.5, 1e-15);
}

TEST(ProximityGraph, GtvCollinearTriple) {
  const auto c = line({0.0, 0.5, 1.0});
  const auto g = build_graph(c, 0.6);
  const std::vector<double> u{1.0, 0.0, 0.0};
  EXPECT_NEAR(gtv(g, u), 2.0 / (9.0 * 0.36), 1e-14);
  const std::vector<int> sub{0};
  const auto cb = cut_and_balance(g, sub);
  EXPECT_NEAR(cb.gtv, 2.0 / (9.0 * 0.36), 1e-14);
  EXPECT_NEAR(cb.balance, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(objective(g, sub, Objective::cheeger()).value, 2.0 / (9.0 * 0.36) * 3.0, 1e-13);
  EXPECT_NEAR(objective(g, sub, Objective::cheeger()).value, 1.85185, 1e-5);
}

TEST(ProximityGraph, ConstantFunctionAndTrivialSubsets) {
  const auto c = sample(Manifold::circle(), 300, 8);
  const auto g = build_graph(c, 0.05);
  const std::vector<double> u(300, 0.7);
  EXPECT_EQ(gtv(g, u), 0.0);
  const std::vector<int> none;
  EXPECT_EQ(cut_and_balance(g, none).gtv, 0.0);
  EXPECT_EQ(cut_and_balance(g, none).balance, 0.0);
  std::vector<int> all(300);
  for (int i = 0; i < 300; ++i) all[i] = i;
  EXPECT_EQ(cut_and_balance(g, all).gtv, 0.0);
  EXPECT_EQ(cut_and_balance(g, all).balance, 0.0);
  const auto ov = objective(g, none, Objective::cheeger());
  EXPECT_TRUE(ov.degenerate);
  EXPECT_EQ(ov.value, std::numeric_limits<double>::infinity());
}

TEST(ProximityGraph, ModularityWithZeroGammaIsGtv) {
  const auto c = sample(Manifold::circle(), 100, 8);
  const auto g = build_graph(c, 0.1);
  std::vector<int> half(50);
  for (int i = 0; i < 50; ++i) half[i] = 2 * i;
  EXPECT_NEAR(objective(g, half, Objective::modularity(0.0)).value, cut_and_balance(g, half).gtv, 1e-15);
}

TEST(ProximityGraph, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  const Manifold ms[] = {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()};
  for (int inst = 0; inst < 15; ++inst) {
    const auto& m = ms[inst % 3];
    const std::size_t n = 50 + rng() % 400;
    const double eps = 0.05 + 0.2 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto c = sample(m, n, rng());
    const auto g = build_graph(c, eps);
    std::vector<double> u(n);
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = static_cast<double>(rng() % 1000) / 1000.0;
      if (rng() % 3 == 0) sub.push_back(static_cast<int>(i));
    }
    const double ref = brute_gtv(c, eps, u);
    EXPECT_NEAR(gtv(g, u), ref, 1e-12 * std::max(1.0, ref));
    std::vector<double> ind(n, 0.0);
    for (int i : sub) ind[i] = 1.0;
    const double ref_ind = brute_gtv(c, eps, ind);
    EXPECT_NEAR(cut_and_balance(g, sub).gtv, ref_ind, 1e-12 * std::max(1.0, ref_ind));
  }
}

TEST(SpatialIndex, NeighborListsMatchBruteForce) {
  for (const auto& m : {Manifold::circle(), Manifold::flat_torus(), Manifold::sphere()}) {
    const auto c = sample(m, 800, 77);
    const double eps = 0.08;
    const auto g = build_graph(c, eps);
    const SpatialIndex index(c.points, m.ambient_dim(), eps);
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<int> expected;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j != i && m.euclidean_distance(c.points[i], c.points[j]) <= eps) expected.push_back(static_cast<int>(j));
      }
      const auto got = g.neighbors(i);
      ASSERT_EQ(std::vector<int>(got.begin(), got.end()), expected);
      auto within = index.within(c.points[i], eps);
      std::erase(within, static_cast<int>(i));
      ASSERT_EQ(within, expected);
    }
  }
}

TEST(ProximityGraph, GraphIsSymmetricWithoutSelfLoops) {
  const auto c = sample(Manifold::flat_torus(), 500, 2);
  const auto g = build_graph(c, 0.1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors(i)) {
      EXPECT_NE(static_cast<std::size_t>(j), i);
      const auto back = g.neighbors(j);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), static_cast<int>(i)));
    }
  }
}

TEST(ProximityGraph, GtvIsOneHomogeneousAndTranslationInvariant) {
  const auto c = sample(Manifold::circle(), 400, 6);
  const auto g = build_graph(c, 0.05);
  std::vector<double> u(400), v(400);
  for (std::size_t i = 0; i < 400; ++i) u[i] = std::sin(7.0 * c.points[i][0]);
  for (std::size_t i = 0; i < 400; ++i) v[i] = -3.0 * u[i] + 2.0;
  EXPECT_NEAR(gtv(g, v), 3.0 * gtv(g, u), 1e-12);
}
