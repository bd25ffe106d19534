#include "cheeger/nonlocal_tv.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"
#include "cheeger/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace cheeger {

namespace {

// Antiderivative of the tent (s - |t|) on [-s, s], zero at -s.
double tent_integral(double t, double s) {
  t = std::clamp(t, -s, s);
  if (t <= 0.0) return s * t + 0.5 * t * t + 0.5 * s * s;
  return 0.5 * s * s + s * t - 0.5 * t * t;
}

double tent_window(double lo, double hi, double s) {
  lo = std::max(lo, -s);
  hi = std::min(hi, s);
  if (hi <= lo) return 0.0;
  return tent_integral(hi, s) - tent_integral(lo, s);
}

// int int 1(|x - y| <= h) over two arcs of length s with centres c apart,
// which reduces to int tent(z) 1(|c + z| <= h) dz.
double circle_pair_weight(double c, double h, double s) { return tent_window(-h - c, h - c, s); }

// Same for two squares of side s with centre offset (d1, d2).
double torus_pair_weight(double d1, double d2, double h, double s) {
  auto inner = [&](double z1) {
    const double x1 = d1 + z1;
    if (std::abs(x1) >= h) return 0.0;
    const double rho = std::sqrt(h * h - x1 * x1);
    return (s - std::abs(z1)) * tent_window(-rho - d2, rho - d2, s);
  };
  std::vector<double> cuts{-s, 0.0, s, h - d1, -h - d1};
  for (double rho : {s - d2, s + d2, d2 - s, -s - d2, d2, -d2}) {
    if (rho <= 0.0 || rho >= h) continue;
    const double x = std::sqrt(h * h - rho * rho);
    cuts.push_back(x - d1);
    cuts.push_back(-x - d1);
  }
  std::vector<double> pts;
  for (double c : cuts) {
    if (c >= -s && c <= s) pts.push_back(c);
  }
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (pts[k + 1] - pts[k] <= 0.0) continue;
    total += integrate(inner, pts[k], pts[k + 1], 24, 4);
  }
  return total;
}

void check_bandwidth(const QuadratureGrid& grid, double h, const char* what) {
  if (!(h > 0.0)) throw Error(ErrorCode::Config, std::string(what) + " must be positive");
  if (h > grid.manifold().h_max() + 1e-12) {
    throw Error(ErrorCode::Config, std::string(what) + " exceeds the manifold's admissible maximum");
  }
  if (grid.spacing() > 0.25 * h * (1.0 + 1e-12)) {
    throw Error(ErrorCode::ResolutionTooCoarse,
                "grid spacing " + std::to_string(grid.spacing()) + " exceeds " + what + "/4");
  }
}

double tv_circle(std::span<const double> f, double h, const QuadratureGrid& grid) {
  const int n = grid.resolution();
  const double s = grid.spacing();
  const int reach = std::min(n / 2, static_cast<int>(std::ceil(h / s)) + 1);
  std::vector<double> w(reach + 1, 0.0);
  for (int k = 1; k <= reach; ++k) w[k] = circle_pair_weight(k * s, h, s);
  CompensatedSum acc;
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= reach; ++k) {
      const double d = std::abs(f[i] - f[(i + k) % n]);
      if (d != 0.0) acc.add(w[k] * d);
    }
  }
  return 2.0 * acc.value() / (h * h);
}

double tv_torus(std::span<const double> f, double h, const QuadratureGrid& grid) {
  const int n = grid.resolution();
  const double s = grid.spacing();
  const int reach = std::min(n / 2 - 1, static_cast<int>(std::ceil(h / s)) + 2);
  const double diag = s * std::sqrt(2.0);
  struct Offset {
    int k1, k2;
    double w;
  };
  std::vector<Offset> stencil;
  for (int k1 = 0; k1 <= reach; ++k1) {
    for (int k2 = -reach; k2 <= reach; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double d = s * std::hypot(k1, k2);
      double w = 0.0;
      if (d + diag <= h) {
        w = s * s * s * s;
      } else if (d - diag <= h) {
        w = torus_pair_weight(k1 * s, k2 * s, h, s);
      }
      if (w > 0.0) stencil.push_back({k1, k2, w});
    }
  }
  CompensatedSum acc;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double fi = f[static_cast<std::size_t>(i1) * n + i2];
      for (const Offset& o : stencil) {
        const int j1 = (i1 + o.k1) % n;
        const int j2 = ((i2 + o.k2) % n + n) % n;
        const double d = std::abs(fi - f[static_cast<std::size_t>(j1) * n + j2]);
        if (d != 0.0) acc.add(o.w * d);
      }
    }
  }
  return 2.0 * acc.value() / (h * h * h);
}

double tv_sphere(std::span<const double> f, double h, const QuadratureGrid& grid, int q) {
  const Manifold& m = grid.manifold();
  const double r = m.scale();
  const double chord = 2.0 * r * std::sin(0.5 * h / r);
  const double chord2 = chord * chord;
  const double reach = chord + 2.0 * grid.max_cell_radius();
  SpatialIndex index(grid.nodes(), 3, reach);
  std::vector<std::vector<Point>> subs(grid.size());
  auto sub = [&](std::size_t i) -> const std::vector<Point>& {
    if (subs[i].empty()) subs[i] = grid.sub_points(i, q);
    return subs[i];
  };
  const double q4 = static_cast<double>(q) * q * q * q;
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& x = grid.node(i);
    index.for_each_candidate(x, reach, [&](int jj) {
      const auto j = static_cast<std::size_t>(jj);
      if (j <= i) return;
      const double diff = std::abs(f[i] - f[j]);
      if (diff == 0.0) return;
      const double d = m.geodesic_distance(x, grid.node(j));
      const double rr = grid.cell_radius(i) + grid.cell_radius(j);
      if (d - rr > h) return;
      double w = grid.weight(i) * grid.weight(j);
      if (d + rr > h) {
        int count = 0;
        for (const Point& a : sub(i)) {
          for (const Point& b : sub(j)) {
            const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
            if (dx * dx + dy * dy + dz * dz <= chord2) ++count;
          }
        }
        w *= count / q4;
      }
      if (w > 0.0) acc.add(w * diff);
    });
  }
  return 2.0 * acc.value() / (h * h * h);
}

// Central-difference gradient norms of f at every node.
std::vector<double> fd_gradient_norms(const ContinuumFunction& f, const QuadratureGrid& grid) {
  const Manifold& m = grid.manifold();
  const int dim = m.intrinsic_dim();
  const double t = grid.spacing() / 8.0;
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point& x = grid.node(i);
    if (f.gradient_norm) {
      out[i] = f.gradient_norm(x);
      continue;
    }
    double g2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double t1 = k == 0 ? t : 0.0;
      const double t2 = k == 1 ? t : 0.0;
      const double d = (f(m.exp_map(x, t1, t2)) - f(m.exp_map(x, -t1, -t2))) / (2.0 * t);
      g2 += d * d;
    }
    out[i] = std::sqrt(g2);
  }
  return out;
}

// Kernel average of node values around an arbitrary point.
struct SmoothingState {
  Manifold manifold;
  SmoothingKernel kernel;
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::vector<double> values;
  std::unique_ptr<SpatialIndex> index;

  SmoothingState(const QuadratureGrid& grid, const SmoothingKernel& k, std::vector<double> v)
      : manifold(grid.manifold()),
        kernel(k),
        nodes(grid.nodes().begin(), grid.nodes().end()),
        weights(grid.weights().begin(), grid.weights().end()),
        values(std::move(v)) {
    index = std::make_unique<SpatialIndex>(nodes, manifold.ambient_dim(), kernel.bandwidth());
  }

  double at(const Point& x) const {
    const double a = kernel.bandwidth();
    double num = 0.0, den = 0.0;
    double ref = std::numeric_limits<double>::quiet_NaN();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    index->for_each_candidate(x, a, [&](int j) {
      const double d = manifold.geodesic_distance(x, nodes[j]);
      if (d >= a) return;
      const double wt = kernel.profile(d / a) * weights[j];
      if (wt <= 0.0) return;
      if (std::isnan(ref)) ref = values[j];
      num += wt * (values[j] - ref);
      den += wt;
      lo = std::min(lo, values[j]);
      hi = std::max(hi, values[j]);
    });
    if (den <= 0.0) {
      double best = 0.0;
      const int j = index->nearest(
          x, [&](const Point& p, const Point& q) { return manifold.geodesic_distance(p, q); }, &best);
      return values[j];
    }
    return std::clamp(ref + num / den, lo, hi);
  }
};

}  // namespace

double surface_tension(int m) {
  switch (m) {
    case 1: return 1.0;
    case 2: return 4.0 / 3.0;
    case 3: return kPi / 2.0;
  }
  throw Error(ErrorCode::UnsupportedDimension, "surface tension defined for m = 1, 2, 3");
}

double tv_nonlocal_values(std::span<const double> values, double h, const QuadratureGrid& grid,
                          const TvOptions& opts) {
  if (values.size() != grid.size()) throw Error(ErrorCode::Config, "node value count mismatch");
  check_bandwidth(grid, h, "h");
  switch (grid.manifold().kind()) {
    case ManifoldKind::Circle: return tv_circle(values, h, grid);
    case ManifoldKind::FlatTorus2: return tv_torus(values, h, grid);
    case ManifoldKind::Sphere2: return tv_sphere(values, h, grid, std::max(1, opts.sub_samples));
  }
  return 0.0;
}

double tv_nonlocal(const ContinuumFunction& f, double h, const QuadratureGrid& grid,
                   const TvOptions& opts) {
  check_bandwidth(grid, h, "h");
  const auto values = grid.sample(f.value);
  return tv_nonlocal_values(values, h, grid, opts);
}

double tv_local_smooth(const ContinuumFunction& f, const QuadratureGrid& grid) {
  return grid.integrate(fd_gradient_norms(f, grid));
}

double max_gradient(const ContinuumFunction& f, const QuadratureGrid& grid) {
  const auto g = fd_gradient_norms(f, grid);
  return g.empty() ? 0.0 : *std::max_element(g.begin(), g.end());
}

double perimeter_reference(const Manifold& m, const FamilyMember& member) {
  if (member.kind != m.kind()) throw Error(ErrorCode::WrongManifold, "family member kind mismatch");
  return CheegerReference(m).member_perimeter();
}

std::vector<double> smooth_on_nodes(std::span<const double> values, const SmoothingKernel& kernel,
                                    const QuadratureGrid& grid) {
  check_bandwidth(grid, kernel.bandwidth(), "a");
  SmoothingState state(grid, kernel, std::vector<double>(values.begin(), values.end()));
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = state.at(grid.node(i));
  return out;
}

ContinuumFunction smooth_node_values(std::vector<double> values, const SmoothingKernel& kernel,
                                     const QuadratureGrid& grid) {
  check_bandwidth(grid, kernel.bandwidth(), "a");
  if (values.size() != grid.size()) throw Error(ErrorCode::Config, "node value count mismatch");
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  auto state = std::make_shared<const SmoothingState>(grid, kernel, std::move(values));
  ContinuumFunction out;
  out.value = [state](const Point& x) { return state->at(x); };
  out.sup_bound = sup;
  return out;
}

ContinuumFunction smooth(const ContinuumFunction& f, const SmoothingKernel& kernel,
                         const QuadratureGrid& grid) {
  check_bandwidth(grid, kernel.bandwidth(), "a");
  auto out = smooth_node_values(grid.sample(f.value), kernel, grid);
  if (f.sup_bound) out.sup_bound = f.sup_bound;
  return out;
}

std::pair<double, double> l1_median(std::span<const double> values, const QuadratureGrid& grid) {
  auto dev = [&](double c) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < values.size(); ++i) acc.add(grid.weight(i) * std::abs(values[i] - c));
    return acc.value();
  };
  double med = golden_section_minimize(dev, 0.0, 1.0, 1e-10);
  // The deviation is piecewise linear with kinks at the values, so the
  // minimum sits on a value; snap to the nearest one when it is no worse.
  double best = dev(med);
  if (!values.empty()) {
    double nearest = values[0];
    for (double v : values) {
      if (std::abs(v - med) < std::abs(nearest - med)) nearest = v;
    }
    const double snapped = dev(nearest);
    if (snapped <= best) {
      med = nearest;
      best = snapped;
    }
  }
  return {med, best};
}

double cheeger_functional_form(const ContinuumFunction& f, const QuadratureGrid& grid) {
  const auto values = grid.sample(f.value);
  for (double v : values) {
    if (v < -1e-12 || v > 1.0 + 1e-12) throw Error(ErrorCode::Config, "f must take values in [0,1]");
  }
  const auto [med, dev] = l1_median(values, grid);
  if (dev < 1e-12) throw Error(ErrorCode::DegenerateFunction, "f is essentially constant");
  const double tv = f.total_variation ? *f.total_variation : tv_local_smooth(f, grid);
  return tv / dev;
}

QuadratureGrid GridPolicy::make(const Manifold& m, double length_scale) const {
  if (resolution > 0) return QuadratureGrid::with_resolution(m, resolution);
  return QuadratureGrid::with_spacing(m, spacing_fraction * length_scale);
}

BiasReport check_bias_inequality(const Manifold& m, const FamilyMember& member,
                                 std::span<const double> h_list, const GridPolicy& policy) {
  BiasReport rep;
  rep.manifold = std::string(m.name());
  const double sigma = surface_tension(m.intrinsic_dim());
  const auto f = ContinuumFunction::indicator(m, member);
  const double tv = perimeter_reference(m, member);
  rep.fitted_constant = -std::numeric_limits<double>::infinity();
  for (double h : h_list) {
    const auto grid = policy.make(m, h);
    BiasRow row;
    row.h = h;
    row.tv_h = tv_nonlocal(f, h, grid);
    row.sigma_tv = sigma * tv;
    row.ratio = row.tv_h / row.sigma_tv;
    row.bound = 1.0 + kCheckConstant * h * h;
    row.violated = row.ratio > row.bound;
    rep.pass = rep.pass && !row.violated;
    rep.fitted_constant = std::max(rep.fitted_constant, (row.ratio - 1.0) / (h * h));
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) rep.fitted_constant = 0.0;
  return rep;
}

MonotonicityReport check_monotonicity(const Manifold& m, const ContinuumFunction& f, double h,
                                      std::span<const double> a_list, const GridPolicy& policy) {
  for (double a : a_list) {
    if (a < h) throw Error(ErrorCode::Config, "monotonicity check needs h <= a");
    if (a > 0.5 * m.h_max() + 1e-12) throw Error(ErrorCode::Config, "a exceeds h_M/2");
  }
  MonotonicityReport rep;
  rep.manifold = std::string(m.name());
  rep.h = h;
  const auto grid = policy.make(m, h);
  const auto values = grid.sample(f.value);
  rep.tv_h = tv_nonlocal_values(values, h, grid);
  rep.degenerate = rep.tv_h <= 1e-14;
  for (double a : a_list) {
    MonotonicityRow row;
    row.a = a;
    row.tv_a = tv_nonlocal_values(values, a, grid);
    if (!rep.degenerate) {
      row.ratio = row.tv_a / rep.tv_h;
      row.violated = row.ratio > kCheckConstant;
      rep.fitted_constant = std::max(rep.fitted_constant, row.ratio);
    }
    rep.pass = rep.pass && !row.violated;
    rep.rows.push_back(row);
  }
  return rep;
}

SmoothingChainReport check_smoothing_chain(const Manifold& m, const ContinuumFunction& f, double h,
                                           double a, const GridPolicy& policy) {
  if (h > a) throw Error(ErrorCode::Config, "smoothing chain needs h <= a");
  if (a > 0.5 * m.h_max() + 1e-12) throw Error(ErrorCode::Config, "a exceeds h_M/2");
  SmoothingChainReport rep;
  rep.manifold = std::string(m.name());
  rep.h = h;
  rep.a = a;
  const auto grid = policy.make(m, h);
  const auto values = grid.sample(f.value);
  const SmoothingKernel kernel(m.intrinsic_dim(), a);
  const auto smoothed = smooth(f, kernel, grid);
  const auto grads = fd_gradient_norms(smoothed, grid);
  const double sigma = surface_tension(m.intrinsic_dim());
  rep.sigma_tv_smoothed = sigma * grid.integrate(grads);
  rep.max_gradient = grads.empty() ? 0.0 : *std::max_element(grads.begin(), grads.end());
  rep.tv_h = tv_nonlocal_values(values, h, grid);
  if (f.sup_bound) {
    rep.sup_norm = *f.sup_bound;
  } else {
    for (double v : values) rep.sup_norm = std::max(rep.sup_norm, std::abs(v));
  }
  const double c = kCheckConstant;
  const double bound = (1.0 + c * (h * h + a)) * rep.tv_h + c * (h / (a * a) + a) * rep.sup_norm;
  rep.bound_residual = rep.sigma_tv_smoothed - bound;
  const auto lam = smooth_on_nodes(values, kernel, grid);
  std::vector<double> diff(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) diff[i] = std::abs(lam[i] - values[i]);
  rep.l1_distance = grid.integrate(diff);
  if (rep.tv_h > 1e-14) {
    rep.ratio = rep.sigma_tv_smoothed / rep.tv_h;
    rep.l1_ratio = rep.l1_distance / (a * rep.tv_h);
  }
  if (rep.sup_norm > 0.0) rep.gradient_ratio = a * rep.max_gradient / rep.sup_norm;
  rep.pass = rep.bound_residual <= 0.0 && rep.l1_ratio <= c && rep.gradient_ratio <= c;
  return rep;
}

VolumeFloorReport check_volume_floor(const Manifold& m, std::span<const double> h_list,
                                     const GridPolicy& policy) {
  VolumeFloorReport rep;
  rep.manifold = std::string(m.name());
  const CheegerReference ref(m);
  const double sigma = surface_tension(m.intrinsic_dim());
  rep.ratio_cap = 2.0 * ref.constant();
  const double r = m.scale();
  for (double h : h_list) {
    const auto grid = policy.make(m, h);
    for (double vol : {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
      std::function<double(const Point&)> ind;
      std::string label;
      switch (m.kind()) {
        case ManifoldKind::Circle:
          label = "arc";
          ind = [m, vol](const Point& x) { return m.chart(x)[0] < vol ? 1.0 : 0.0; };
          break;
        case ManifoldKind::FlatTorus2:
          label = "strip";
          ind = [m, vol](const Point& x) { return m.chart(x)[0] < vol ? 1.0 : 0.0; };
          break;
        case ManifoldKind::Sphere2: {
          label = "cap";
          const double z = r * (1.0 - 2.0 * vol);
          ind = [z](const Point& x) { return x[2] > z ? 1.0 : 0.0; };
          break;
        }
      }
      const auto values = grid.sample(ind);
      VolumeFloorRow row;
      row.label = label;
      row.h = h;
      row.volume = vol;
      row.tv_h = tv_nonlocal_values(values, h, grid);
      row.ratio = row.tv_h / (sigma * std::min(vol, 1.0 - vol));
      row.violated = row.ratio <= rep.ratio_cap && std::min(vol, 1.0 - vol) < rep.beta0;
      rep.pass = rep.pass && !row.violated;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace cheeger
