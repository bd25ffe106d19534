#include "cheeger/consistency.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"
#include "cheeger/proximity_graph.hpp"
#include "cheeger/spatial_index.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cheeger {

namespace {

double cloud_distance(const PointCloud& cloud, const Point& x, const Point& y) {
  if (cloud.manifold) return cloud.manifold->geodesic_distance(x, y);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

double index_cell(const PointCloud& cloud) {
  const double n = static_cast<double>(cloud.size());
  const int m = std::max(1, cloud.intrinsic_dim);
  if (cloud.manifold) return std::max(2.0 * std::pow(n, -1.0 / m), 1e-6);
  double extent = 0.0;
  for (int k = 0; k < cloud.ambient_dim; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Point& p : cloud.points) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    extent = std::max(extent, hi - lo);
  }
  return std::max(2.0 * extent * std::pow(n, -1.0 / m), 1e-6);
}

// Length of [a, b) inside the periodic interval [s, s + len) on R/Z.
double periodic_overlap(double a, double b, double s, double len) {
  s = wrap_unit(s);
  double total = 0.0;
  for (int k = -1; k <= 1; ++k) {
    total += std::max(0.0, std::min(b, s + len + k) - std::max(a, s + k));
  }
  return total;
}

// Fraction of cell i covered by the member (exact for arcs and strips).
double coverage(const FamilyMember& member, const QuadratureGrid& grid, std::size_t i) {
  const auto& b = grid.box(i);
  switch (member.kind) {
    case ManifoldKind::Circle:
      return periodic_overlap(b.lo0, b.hi0, member.center - 0.25, 0.5) / (b.hi0 - b.lo0);
    case ManifoldKind::FlatTorus2:
      if (member.axis == 0) return periodic_overlap(b.lo0, b.hi0, member.offset, 0.5) / (b.hi0 - b.lo0);
      return periodic_overlap(b.lo1, b.hi1, member.offset, 0.5) / (b.hi1 - b.lo1);
    case ManifoldKind::Sphere2:
      return member.contains(grid.manifold(), grid.node(i)) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::array<double, 3> normalized(std::array<double, 3> p) {
  const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return {p[0] / r, p[1] / r, p[2] / r};
}

// Antiderivative of the polar volume density.
double radial_measure(const Manifold& m, double rho) {
  switch (m.kind()) {
    case ManifoldKind::Circle: return rho;
    case ManifoldKind::FlatTorus2: return 0.5 * rho * rho;
    case ManifoldKind::Sphere2: {
      const double r = m.scale();
      return r * r * (1.0 - std::cos(rho / r));
    }
  }
  return 0.0;
}

// Counted radial intervals along geodesic rays from x up to radius rmax.
class RayProfile {
 public:
  RayProfile(const Manifold& m, const ContinuumFunction& set, const Point& x, double rmax,
             bool inside, int rays)
      : m_(m) {
    const int count = m.intrinsic_dim() == 1 ? 2 : rays;
    weight_ = m.intrinsic_dim() == 1 ? 1.0 : 2.0 * kPi / count;
    constexpr int kSteps = 512;
    const double step = rmax / kSteps;
    intervals_.resize(count);
    for (int k = 0; k < count; ++k) {
      double c1 = 1.0, c2 = 0.0;
      if (m.intrinsic_dim() == 1) {
        c1 = k == 0 ? 1.0 : -1.0;
      } else {
        const double th = 2.0 * kPi * k / count;
        c1 = std::cos(th);
        c2 = std::sin(th);
      }
      auto counted = [&](double rho) {
        const bool in = set(m.exp_map(x, rho * c1, rho * c2)) > 0.5;
        return in == inside;
      };
      bool state = counted(0.0);
      double start = 0.0;
      double prev = 0.0;
      for (int s = 1; s <= kSteps; ++s) {
        const double rho = s * step;
        const bool now = counted(rho);
        if (now != state) {
          double lo = prev, hi = rho;
          for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            (counted(mid) == state ? lo : hi) = mid;
          }
          const double cross = 0.5 * (lo + hi);
          if (state) intervals_[k].push_back({start, cross});
          start = cross;
          state = now;
        }
        prev = rho;
      }
      if (state) intervals_[k].push_back({start, rmax});
    }
  }

  double volume(double r) const {
    CompensatedSum acc;
    for (const auto& ray : intervals_) {
      for (auto [a, b] : ray) {
        if (a >= r) break;
        acc.add(radial_measure(m_, std::min(b, r)) - radial_measure(m_, a));
      }
    }
    return weight_ * acc.value();
  }

 private:
  Manifold m_;
  double weight_ = 1.0;
  std::vector<std::vector<std::pair<double, double>>> intervals_;
};

// Counted radial measure along one geodesic ray from x up to r.
double ray_measure(const Manifold& m, const ContinuumFunction& set, const Point& x, double c1, double c2,
                   double r, bool inside) {
  constexpr int kSteps = 256;
  auto counted = [&](double rho) { return (set(m.exp_map(x, rho * c1, rho * c2)) > 0.5) == inside; };
  double total = 0.0;
  bool state = counted(0.0);
  double start = 0.0, prev = 0.0;
  for (int s = 1; s <= kSteps; ++s) {
    const double rho = r * s / kSteps;
    const bool now = counted(rho);
    if (now != state) {
      double lo = prev, hi = rho;
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (counted(mid) == state ? lo : hi) = mid;
      }
      const double cross = 0.5 * (lo + hi);
      if (state) total += radial_measure(m, cross) - radial_measure(m, start);
      start = cross;
      state = now;
    }
    prev = rho;
  }
  if (state) total += radial_measure(m, r) - radial_measure(m, start);
  return total;
}

// Ball volume counted against the set with adaptive quadrature over the ray
// direction; the integrand has kinks where the ball touches the boundary.
double adaptive_ball_volume(const Manifold& m, const ContinuumFunction& set, const Point& x, double r,
                            bool inside) {
  if (m.intrinsic_dim() == 1) {
    return ray_measure(m, set, x, 1.0, 0.0, r, inside) + ray_measure(m, set, x, -1.0, 0.0, r, inside);
  }
  // Fixed panels keep a kink from hiding between the nodes of a single rule.
  constexpr int kPanels = 48;
  auto f = [&](double th) { return ray_measure(m, set, x, std::cos(th), std::sin(th), r, inside); };
  CompensatedSum acc;
  for (int k = 0; k < kPanels; ++k) {
    const double a = 2.0 * kPi * k / kPanels, b = 2.0 * kPi * (k + 1) / kPanels;
    acc.add(boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 10, 1e-11));
  }
  return acc.value();
}

double injectivity_limit(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::Circle: return 0.5;
    case ManifoldKind::FlatTorus2: return 0.5;
    case ManifoldKind::Sphere2: return kPi * m.scale();
  }
  return 0.5;
}

}  // namespace

TransportSurrogate transport_assign(const PointCloud& cloud, std::span<const Point> nodes) {
  if (cloud.size() == 0) throw Error(ErrorCode::Config, "transport needs a nonempty cloud");
  TransportSurrogate out;
  out.assignment.resize(nodes.size());
  SpatialIndex index(cloud.points, std::max(1, cloud.ambient_dim), index_cell(cloud));
  auto metric = [&](const Point& x, const Point& y) { return cloud_distance(cloud, x, y); };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double d = 0.0;
    out.assignment[i] = index.nearest(nodes[i], metric, &d);
    out.sup_displacement = std::max(out.sup_displacement, d);
  }
  return out;
}

std::vector<double> interpolate_on_nodes(std::span<const double> u,
                                         const TransportSurrogate& surrogate,
                                         const SmoothingKernel& kernel, const QuadratureGrid& grid) {
  if (surrogate.assignment.size() != grid.size()) {
    throw Error(ErrorCode::Config, "surrogate was not built over this grid");
  }
  if (kernel.bandwidth() < 2.0 * surrogate.sup_displacement) {
    throw Error(ErrorCode::BandwidthTooSmall, "bandwidth below twice the sup displacement");
  }
  std::vector<double> pulled(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pulled[i] = u[surrogate.assignment[i]];
  return smooth_on_nodes(pulled, kernel, grid);
}

ContinuumFunction interpolate(std::span<const double> u, const TransportSurrogate& surrogate,
                              const SmoothingKernel& kernel, const QuadratureGrid& grid) {
  if (surrogate.assignment.size() != grid.size()) {
    throw Error(ErrorCode::Config, "surrogate was not built over this grid");
  }
  if (kernel.bandwidth() < 2.0 * surrogate.sup_displacement) {
    throw Error(ErrorCode::BandwidthTooSmall, "bandwidth below twice the sup displacement");
  }
  std::vector<double> pulled(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pulled[i] = u[surrogate.assignment[i]];
  return smooth_node_values(std::move(pulled), kernel, grid);
}

double symmetric_difference(std::span<const double> values, const FamilyMember& member,
                            const QuadratureGrid& grid) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = coverage(member, grid, i);
    acc.add(grid.weight(i) * (c * std::abs(values[i] - 1.0) + (1.0 - c) * std::abs(values[i])));
  }
  return acc.value();
}

Asymmetry fraenkel_asymmetry_values(std::span<const double> values, const CheegerReference& ref,
                                    const QuadratureGrid& grid) {
  if (values.size() != grid.size()) throw Error(ErrorCode::Config, "node value count mismatch");
  const Manifold& m = ref.manifold();
  Asymmetry best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](const FamilyMember& f) {
    const double v = symmetric_difference(values, f, grid);
    if (v < best.value) {
      best.value = v;
      best.member = f;
    }
    return v;
  };
  constexpr int kScan = 512;
  switch (m.kind()) {
    case ManifoldKind::Circle: {
      for (int k = 0; k < kScan; ++k) consider(FamilyMember::half_arc(static_cast<double>(k) / kScan));
      const double c0 = best.member.center;
      const double c = golden_section_minimize(
          [&](double t) { return consider(FamilyMember::half_arc(wrap_unit(t))); },
          c0 - 1.0 / kScan, c0 + 1.0 / kScan, 1e-10);
      consider(FamilyMember::half_arc(wrap_unit(c)));
      break;
    }
    case ManifoldKind::FlatTorus2: {
      for (int axis = 0; axis < 2; ++axis) {
        for (int k = 0; k < kScan; ++k) consider(FamilyMember::strip(axis, static_cast<double>(k) / kScan));
      }
      const int axis = best.member.axis;
      const double o0 = best.member.offset;
      const double o = golden_section_minimize(
          [&](double t) { return consider(FamilyMember::strip(axis, wrap_unit(t))); },
          o0 - 1.0 / kScan, o0 + 1.0 / kScan, 1e-10);
      consider(FamilyMember::strip(axis, wrap_unit(o)));
      break;
    }
    case ManifoldKind::Sphere2: {
      constexpr int kLattice = 400;
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < kLattice; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / kLattice;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        consider(FamilyMember::hemisphere({rho * std::cos(golden * k), rho * std::sin(golden * k), z}));
      }
      double step = std::sqrt(4.0 * kPi / kLattice) / 3.0;
      for (int level = 0; level < 3; ++level) {
        const auto p = best.member.pole;
        const auto f = m.frame(Point{p[0], p[1], p[2], 0.0});
        for (int i = -3; i <= 3; ++i) {
          for (int j = -3; j <= 3; ++j) {
            if (i == 0 && j == 0) continue;
            std::array<double, 3> q{};
            for (int k = 0; k < 3; ++k) q[k] = p[k] + step * (i * f[0][k] + j * f[1][k]);
            consider(FamilyMember::hemisphere(normalized(q)));
          }
        }
        step /= 3.0;
      }
      break;
    }
  }
  return best;
}

Asymmetry fraenkel_asymmetry(const ContinuumFunction& set_indicator, const CheegerReference& ref,
                             const QuadratureGrid& grid) {
  return fraenkel_asymmetry_values(grid.sample(set_indicator.value), ref, grid);
}

double ball_set_volume(const Manifold& m, const ContinuumFunction& set, const Point& x, double r,
                       bool inside) {
  return adaptive_ball_volume(m, set, x, r, inside);
}

FixMassResult fix_mass(const ContinuumFunction& set, double volume, double mass, const Manifold& m,
                       const QuadratureGrid& grid) {
  const double target = volume + mass;
  if (!(target > 0.0 && target < 1.0)) {
    throw Error(ErrorCode::InfeasibleMass, "target volume " + std::to_string(target) + " not in (0,1)");
  }
  FixMassResult out;
  out.set = set;
  out.volume = volume;
  if (mass == 0.0) return out;
  out.added = mass > 0.0;
  const double amount = std::abs(mass);
  // Ball part counted against the set: outside it when adding, inside when removing.
  const bool count_inside = !out.added;
  const double room = out.added ? 1.0 - volume : volume;
  const double rho = std::min(1.0, amount / room);
  const double r_rho = std::min(m.ball_radius_for_volume(rho), injectivity_limit(m));

  // Centre: largest overlap with the opposite side still within rho * vol.
  const auto values = grid.sample(set.value);
  const int dims = m.ambient_dim();
  SpatialIndex index(grid.nodes(), dims, std::max(r_rho, grid.spacing()));
  int coarse = 0;
  switch (m.kind()) {
    case ManifoldKind::Circle: coarse = 2048; break;
    case ManifoldKind::FlatTorus2: coarse = 48; break;
    case ManifoldKind::Sphere2: coarse = 36; break;
  }
  const auto candidates = QuadratureGrid::with_resolution(m, coarse);
  const double cap = rho * (out.added ? volume : 1.0 - volume);
  int best = -1;
  double best_overlap = -1.0;
  int fallback = -1;
  double fallback_overlap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Point& x = candidates.node(c);
    CompensatedSum acc;
    index.for_each_candidate(x, r_rho, [&](int j) {
      if (m.geodesic_distance(x, grid.node(j)) > r_rho) return;
      const bool in = values[j] > 0.5;
      if (in != count_inside) acc.add(grid.weight(j));
    });
    const double ov = acc.value();
    if (ov <= cap && ov > best_overlap) {
      best_overlap = ov;
      best = static_cast<int>(c);
    }
    if (ov < fallback_overlap) {
      fallback_overlap = ov;
      fallback = static_cast<int>(c);
    }
  }
  if (best < 0) best = fallback;
  const Point center = candidates.node(best);

  double hi = std::max(r_rho, grid.spacing());
  const double limit = injectivity_limit(m);
  RayProfile profile(m, set, center, std::min(2.0 * hi, limit), count_inside, 512);
  while (profile.volume(std::min(hi, limit)) < amount) {
    if (hi >= limit) {
      throw Error(ErrorCode::InfeasibleMass, "ball correction exceeds the injectivity radius");
    }
    hi = std::min(2.0 * hi, limit);
    profile = RayProfile(m, set, center, hi, count_inside, 512);
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = profile.volume(mid);
    if (std::abs(v - amount) <= 1e-10) {
      lo = hi = mid;
      break;
    }
    (v < amount ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  // Newton polish against the adaptive volume, with the slope taken from the
  // ray profile.
  double radius = 0.5 * (lo + hi);
  double changed = adaptive_ball_volume(m, set, center, radius, count_inside);
  for (int it = 0; it < 4 && std::abs(changed - amount) > 1e-12; ++it) {
    const double d = 1e-4 * std::max(radius, grid.spacing());
    const double slope = (profile.volume(radius + d) - profile.volume(std::max(0.0, radius - d))) /
                         (radius + d - std::max(0.0, radius - d));
    if (!(slope > 0.0)) break;
    const double next = std::clamp(radius - (changed - amount) / slope, 0.0, limit);
    const double next_changed = adaptive_ball_volume(m, set, center, next, count_inside);
    if (std::abs(next_changed - amount) >= std::abs(changed - amount)) break;
    radius = next;
    changed = next_changed;
  }
  out.center = center;
  out.radius = radius;
  out.changed_volume = changed;
  out.volume = volume + (out.added ? out.changed_volume : -out.changed_volume);
  out.perimeter_increment = m.ball_perimeter(radius);
  const bool added = out.added;
  out.set.value = [set, m, center, radius, added](const Point& x) {
    const bool in = set(x) > 0.5;
    const bool ball = m.geodesic_distance(x, center) < radius;
    return (added ? (in || ball) : (in && !ball)) ? 1.0 : 0.0;
  };
  out.set.gradient_norm = nullptr;
  out.set.total_variation.reset();
  out.set.sup_bound = 1.0;
  return out;
}

double EpsilonRule::operator()(std::size_t n) const {
  return c * std::pow(static_cast<double>(n), -exponent);
}

UstatReport ustat_concentration(const Manifold& m, const FamilyMember& member,
                                std::span<const std::size_t> n_list, const EpsilonRule& rule,
                                int trials, std::uint64_t seed, std::span<const double> zeta_grid,
                                int workers) {
  if (trials < 1) throw Error(ErrorCode::Config, "trials must be >= 1");
  UstatReport rep;
  rep.manifold = std::string(m.name());
  const double sigma = surface_tension(m.intrinsic_dim());
  rep.sigma_tv = sigma * perimeter_reference(m, member);
  for (std::size_t n : n_list) {
    UstatRow row;
    row.n = n;
    row.epsilon = rule(n);
    if (row.epsilon > m.epsilon0()) {
      throw Error(ErrorCode::Config, "epsilon exceeds epsilon_0 at n = " + std::to_string(n));
    }
    row.values.assign(trials, 0.0);
    parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
      const auto cloud = sample(m, n, derive_seed(seed, n, t));
      const auto g = build_graph(cloud, row.epsilon);
      std::vector<std::uint8_t> mask(n);
      for (std::size_t i = 0; i < n; ++i) mask[i] = member.contains(m, cloud.points[i]) ? 1 : 0;
      row.values[t] = 2.0 * static_cast<double>(cut_count(g, mask)) * g.functional_scale();
    });
    CompensatedSum s;
    for (double v : row.values) s.add(v);
    row.mean = s.value() / trials;
    CompensatedSum ss;
    for (double v : row.values) ss.add((v - row.mean) * (v - row.mean));
    row.stddev = trials > 1 ? std::sqrt(ss.value() / (trials - 1)) : 0.0;
    row.threshold_base = rep.sigma_tv * (1.0 + kCheckConstant * row.epsilon * row.epsilon);
    for (double z : zeta_grid) {
      int over = 0;
      for (double v : row.values) over += v > row.threshold_base + z ? 1 : 0;
      row.zeta.push_back(z);
      row.exceedance.push_back(static_cast<double>(over) / trials);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

CutError cut_l1_error(const CutResult& cut, const PointCloud& cloud, const CheegerReference& ref,
                      double a, const QuadratureGrid& grid) {
  if (!cloud.manifold || !(*cloud.manifold == ref.manifold())) {
    throw Error(ErrorCode::WrongManifold, "cloud and reference manifolds differ");
  }
  const auto mask = subset_mask(cloud.size(), cut.subset);
  std::vector<double> u(mask.begin(), mask.end());
  const auto surrogate = transport_assign(cloud, grid.nodes());
  std::vector<double> pulled(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pulled[i] = u[surrogate.assignment[i]];
  const auto asym = fraenkel_asymmetry_values(pulled, ref, grid);
  CutError out;
  out.l1_error = asym.value;
  out.member = asym.member;
  out.sup_displacement = surrogate.sup_displacement;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const bool in = asym.member.contains(ref.manifold(), cloud.points[i]);
    wrong += (in != (mask[i] != 0)) ? 1 : 0;
  }
  out.discrete_error = cloud.size() ? static_cast<double>(wrong) / cloud.size() : 0.0;
  if (a > 0.0 && a >= 2.0 * surrogate.sup_displacement && a <= ref.manifold().h_max() &&
      grid.spacing() <= 0.25 * a) {
    const auto smoothed = interpolate_on_nodes(u, surrogate, SmoothingKernel(ref.manifold().intrinsic_dim(), a), grid);
    out.smoothed_error = symmetric_difference(smoothed, asym.member, grid);
  }
  return out;
}

std::pair<double, double> ols(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {slope, my - slope * mx};
}

RateReport fit_rate(const std::map<double, std::vector<double>>& errors, std::uint64_t seed,
                    int resamples) {
  if (errors.size() < 3) throw Error(ErrorCode::InsufficientData, "need at least 3 distinct n");
  for (const auto& [n, e] : errors) {
    if (e.size() < 5) {
      throw Error(ErrorCode::InsufficientData, "need at least 5 trials at n = " + std::to_string(n));
    }
  }
  constexpr double kFloor = 1e-300;
  RateReport rep;
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [n, e] : errors) {
    rep.n_values.push_back(n);
    rep.medians.push_back(median(e));
    lx.push_back(std::log(n));
    ly.push_back(std::log(std::max(rep.medians.back(), kFloor)));
  }
  std::tie(rep.slope, rep.intercept) = ols(lx, ly);
  rep.bootstrap = resamples;
  std::mt19937_64 rng(seed);
  std::vector<double> slopes;
  slopes.reserve(resamples);
  std::vector<double> by(ly.size());
  for (int b = 0; b < resamples; ++b) {
    std::size_t k = 0;
    for (const auto& [n, e] : errors) {
      std::vector<double> draw(e.size());
      for (auto& d : draw) {
        const auto idx = static_cast<std::size_t>(unit_uniform(rng) * e.size());
        d = e[std::min(idx, e.size() - 1)];
      }
      by[k++] = std::log(std::max(median(std::move(draw)), kFloor));
    }
    slopes.push_back(ols(lx, by).first);
  }
  std::sort(slopes.begin(), slopes.end());
  if (!slopes.empty()) {
    const double last = static_cast<double>(slopes.size() - 1);
    rep.ci_low = slopes[static_cast<std::size_t>(std::floor(0.05 * last))];
    rep.ci_high = slopes[static_cast<std::size_t>(std::ceil(0.95 * last))];
  } else {
    rep.ci_low = rep.ci_high = rep.slope;
  }
  return rep;
}

double graph_perimeter_excess(std::span<const std::pair<double, double>> vertices) {
  if (vertices.empty()) return 0.0;
  CompensatedSum acc;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto [v0, g0] = vertices[k];
    auto [v1, g1] = vertices[(k + 1) % vertices.size()];
    if (k + 1 == vertices.size()) v1 += 1.0;
    acc.add(std::hypot(v1 - v0, g1 - g0));
  }
  return acc.value() - 1.0;
}

ExcessReport perimeter_excess_study(std::span<const double> t_list) {
  ExcessReport rep;
  std::vector<double> lx, ly;
  rep.fitted_c = std::numeric_limits<double>::infinity();
  for (double t : t_list) {
    // Up tent on [0, 1/2], down tent on [1/2, 1]: int |g| = t, int g = 0.
    const double height = 2.0 * t;
    const std::vector<std::pair<double, double>> verts{
        {0.0, 0.0}, {0.25, height}, {0.5, 0.0}, {0.75, -height}};
    ExcessRow row;
    row.t = t;
    row.l1_size = 0.5 * height * 0.5 * 2.0;
    row.excess = graph_perimeter_excess(verts);
    rep.fitted_c = std::min(rep.fitted_c, row.excess / (t * t));
    lx.push_back(std::log(t));
    ly.push_back(std::log(row.excess));
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2) rep.slope = ols(lx, ly).first;
  if (rep.rows.empty()) rep.fitted_c = 0.0;
  return rep;
}

}  // namespace cheeger
