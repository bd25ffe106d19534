#include "cheeger/cut_solvers.hpp"

#include "cheeger/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace cheeger {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint8_t> canonical_mask(std::span<const std::uint8_t> mask) {
  std::vector<std::uint8_t> out(mask.begin(), mask.end());
  if (!out.empty() && !out[0]) {
    for (auto& b : out) b = b ? 0 : 1;
  }
  return out;
}

}  // namespace

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Exact: return "exact";
    case SolverKind::ArcSweep: return "arc";
    case SolverKind::SpectralSweep: return "spectral";
    case SolverKind::LocalSearch: return "local_search";
    case SolverKind::Pipeline: return "pipeline";
  }
  return "";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::GlobalOptimum: return "GlobalOptimum";
    case Certificate::FamilyOptimum: return "FamilyOptimum";
    case Certificate::Heuristic: return "Heuristic";
  }
  return "";
}

bool objective_less(double a, double b) {
  if (std::isinf(b) && !std::isinf(a)) return true;
  if (std::isinf(a)) return false;
  return a < b - kTieTolerance * std::max(std::abs(a), std::abs(b));
}

bool objective_tie(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

bool lexicographically_smaller(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  // Sorted index lists compared lexicographically: at the first index x in
  // the symmetric difference, the list containing x is smaller unless the
  // other list has no elements beyond x (then the other is a prefix).
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t x = 0; x < n; ++x) {
    if (a[x] == b[x]) continue;
    const auto& other = a[x] ? b : a;
    bool other_has_more = false;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (other[y]) {
        other_has_more = true;
        break;
      }
    }
    const bool a_contains = a[x] != 0;
    return a_contains ? other_has_more : !other_has_more;
  }
  return false;
}

CutResult make_cut_result(const ProximityGraph& g, std::span<const std::uint8_t> mask,
                          const Objective& o, SolverKind solver, Certificate cert) {
  const auto canon = canonical_mask(mask);
  CutResult r;
  r.objective = o;
  r.solver = solver;
  r.certificate = cert;
  std::size_t size = 0;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (canon[i]) {
      r.subset.push_back(static_cast<int>(i));
      ++size;
    }
  }
  r.cut = cut_count(g, canon);
  r.gtv = 2.0 * static_cast<double>(r.cut) * g.functional_scale();
  const double frac = g.size() ? static_cast<double>(size) / static_cast<double>(g.size()) : 0.0;
  r.balance = std::min(frac, 1.0 - frac);
  r.objective_value = objective_from_counts(o, r.cut, size, g.size(), g.functional_scale()).value;
  return r;
}

// ---------------------------------------------------------------------------
// Exact enumeration

CutResult solve_exact(const ProximityGraph& g, const Objective& o) {
  const auto t0 = Clock::now();
  const std::size_t n = g.size();
  if (n > kExactSizeLimit) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "exact solver supports n <= 24, got n = " + std::to_string(n));
  }
  if (n <= 1) {
    std::vector<std::uint8_t> mask(n, 1);
    auto r = make_cut_result(g, mask, o, SolverKind::Exact, Certificate::GlobalOptimum);
    r.elapsed = seconds_since(t0);
    return r;
  }
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<int> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j : g.neighbors(i)) adj[i] |= (1u << j);
    deg[i] = static_cast<int>(g.degree(i));
  }
  const double scale = g.functional_scale();
  // Vertex 0 is always in S; Gray code over vertices 1..n-1.
  std::uint32_t set = 1u;
  std::int64_t cut = deg[0];
  std::size_t size = 1;
  auto lex_less = [n](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    const int x = std::countr_zero(diff);
    const std::uint32_t other = (a >> x) & 1u ? b : a;
    const bool other_has_more = x + 1 < 32 && (other >> (x + 1)) != 0;
    (void)n;
    return ((a >> x) & 1u) ? other_has_more : !other_has_more;
  };
  double best_val = objective_from_counts(o, cut, size, n, scale).value;
  std::uint32_t best_set = set;
  const std::uint64_t total = 1ULL << (n - 1);
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k) + 1;  // vertex toggled
    const std::uint32_t vb = 1u << bit;
    if (set & vb) {
      set &= ~vb;
      cut += 2 * std::popcount(adj[bit] & set) - deg[bit];
      --size;
    } else {
      cut += deg[bit] - 2 * std::popcount(adj[bit] & set);
      set |= vb;
      ++size;
    }
    const double val = objective_from_counts(o, cut, size, n, scale).value;
    if (objective_less(val, best_val) || (objective_tie(val, best_val) && lex_less(set, best_set))) {
      best_val = val;
      best_set = set;
    }
  }
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) mask[i] = (best_set >> i) & 1u;
  auto r = make_cut_result(g, mask, o, SolverKind::Exact, Certificate::GlobalOptimum);
  r.elapsed = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Arc sweep

CutResult solve_arc_sweep(const ProximityGraph& g, const PointCloud& cloud, const Objective& o) {
  const auto t0 = Clock::now();
  if (!cloud.manifold || cloud.manifold->kind() != ManifoldKind::Circle) {
    throw Error(ErrorCode::WrongManifold, "arc sweep requires a circle cloud");
  }
  const std::size_t n = g.size();
  if (cloud.size() != n) throw Error(ErrorCode::Config, "cloud and graph sizes differ");
  if (n < 2) {
    std::vector<std::uint8_t> mask(n, 1);
    auto r = make_cut_result(g, mask, o, SolverKind::ArcSweep, Certificate::FamilyOptimum);
    r.elapsed = seconds_since(t0);
    return r;
  }
  const Manifold& m = *cloud.manifold;
  std::vector<double> angle(n);
  for (std::size_t i = 0; i < n; ++i) angle[i] = m.chart(cloud.points[i])[0];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return angle[a] < angle[b] || (angle[a] == angle[b] && a < b);
  });
  std::vector<int> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[order[p]] = static_cast<int>(p);

  // Neighbors of the vertex at position p occupy the cyclic windows
  // p-L..p-1 and p+1..p+R of the angular order.
  const std::int64_t nn = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> left(n, 0), right(n, 0);
  std::vector<std::uint8_t> is_nb(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const int v = order[p];
    for (int j : g.neighbors(v)) is_nb[pos[j]] = 1;
    std::int64_t l = 0;
    while (l < nn - 1 && is_nb[(p + n - 1 - l) % n]) ++l;
    std::int64_t r = 0;
    while (r < nn - 1 - l && is_nb[(p + 1 + r) % n]) ++r;
    for (int j : g.neighbors(v)) is_nb[pos[j]] = 0;
    if (l + r != static_cast<std::int64_t>(g.degree(v))) {
      throw Error(ErrorCode::WrongManifold,
                  "neighbor sets are not angular windows; graph does not match the cloud");
    }
    left[p] = l;
    right[p] = r;
  }

  const double scale = g.functional_scale();
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t best_s = 0, best_len = 1;
  auto arc_mask = [&](std::size_t s, std::size_t len) {
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t k = 0; k < len; ++k) mask[order[(s + k) % n]] = 1;
    return canonical_mask(mask);
  };
  const std::size_t max_len = n / 2;
  for (std::size_t s = 0; s < n; ++s) {
    std::int64_t cut = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const std::size_t q = (s + len - 1) % n;
      const std::int64_t prev = static_cast<std::int64_t>(len) - 1;
      const std::int64_t inside =
          std::min(left[q], prev) + std::max<std::int64_t>(0, prev - (nn - right[q]) + 1);
      cut += static_cast<std::int64_t>(g.degree(order[q])) - 2 * inside;
      const double val = objective_from_counts(o, cut, len, n, scale).value;
      if (objective_less(val, best_val)) {
        best_val = val;
        best_s = s;
        best_len = len;
      } else if (objective_tie(val, best_val) && (s != best_s || len != best_len)) {
        if (lexicographically_smaller(arc_mask(s, len), arc_mask(best_s, best_len))) {
          best_s = s;
          best_len = len;
        }
      }
    }
  }
  auto r = make_cut_result(g, arc_mask(best_s, best_len), o, SolverKind::ArcSweep,
                           Certificate::FamilyOptimum);
  r.elapsed = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Spectral

EigenNotConverged::EigenNotConverged(int iterations, double residual, EigenPairs best)
    : Error(ErrorCode::EigenNotConverged,
            "Fiedler iteration did not converge after " + std::to_string(iterations) +
                " iterations (relative residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual),
      best_(std::move(best)) {}

namespace {

void apply_laplacian(const ProximityGraph& g, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = static_cast<double>(g.degree(i)) * x[i];
    for (int j : g.neighbors(i)) s -= x[j];
    y[i] = s;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void remove_mean(std::span<double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double normalize(std::span<double> x) {
  const double nrm = std::sqrt(dot(x, x));
  if (nrm > 0.0) {
    for (double& v : x) v /= nrm;
  }
  return nrm;
}

}  // namespace

EigenPairs laplacian_eigenpairs(const ProximityGraph& g, const SpectralOptions& opts) {
  const std::size_t n = g.size();
  EigenPairs out;
  if (n < 2) {
    out.converged = true;
    return out;
  }
  std::size_t max_deg = 0;
  for (std::size_t i = 0; i < n; ++i) max_deg = std::max(max_deg, g.degree(i));
  const double op_norm = std::max(1.0, 2.0 * static_cast<double>(max_deg));
  const std::size_t nev = std::min<std::size_t>(std::max(opts.vectors, 1), n - 1);
  const std::size_t kmax =
      std::min<std::size_t>(n - 1, std::max<std::size_t>(opts.max_krylov, nev + 10));

  std::mt19937_64 rng(opts.seed);
  std::vector<double> start(n);
  for (double& v : start) v = 2.0 * unit_uniform(rng) - 1.0;

  std::vector<double> w(n);
  int matvecs = 0;
  while (true) {
    remove_mean(start);
    normalize(start);
    std::vector<std::vector<double>> basis;
    basis.push_back(start);
    std::vector<double> alpha, beta;
    bool done = false;
    bool invariant = false;
    Eigen::VectorXd ritz_values;
    Eigen::MatrixXd ritz_coeffs;
    std::size_t k = 0;
    while (true) {
      const auto& q = basis.back();
      apply_laplacian(g, q, w);
      ++matvecs;
      const double a = dot(q, w);
      alpha.push_back(a);
      for (std::size_t i = 0; i < n; ++i) w[i] -= a * q[i];
      if (basis.size() > 1) {
        const auto& qp = basis[basis.size() - 2];
        for (std::size_t i = 0; i < n; ++i) w[i] -= beta.back() * qp[i];
      }
      for (int pass = 0; pass < 2; ++pass) {
        remove_mean(w);
        for (const auto& b : basis) {
          const double c = dot(b, w);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
        }
      }
      const double b = std::sqrt(dot(w, w));
      k = alpha.size();
      invariant = b <= 1e-12 * op_norm;
      const bool budget = matvecs >= opts.max_iterations;
      if (k % 10 == 0 || k == kmax || invariant || budget) {
        Eigen::VectorXd diag(k), sub(k > 1 ? k - 1 : 0);
        for (std::size_t i = 0; i < k; ++i) diag[i] = alpha[i];
        for (std::size_t i = 0; i + 1 < k; ++i) sub[i] = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        ritz_values = tri.eigenvalues();
        ritz_coeffs = tri.eigenvectors();
        const double est = invariant ? 0.0 : b * std::abs(ritz_coeffs(k - 1, 0));
        out.residual = est / op_norm;
        if (out.residual <= opts.tolerance || invariant) {
          out.converged = true;
          done = true;
        }
        if (done || k == kmax || budget) break;
      }
      beta.push_back(b);
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
      basis.push_back(std::move(next));
    }
    const std::size_t count = std::min<std::size_t>(nev, k);
    out.values.assign(count, 0.0);
    out.vectors.assign(count, std::vector<double>(n, 0.0));
    for (std::size_t e = 0; e < count; ++e) {
      out.values[e] = ritz_values[static_cast<Eigen::Index>(e)];
      for (std::size_t j = 0; j < k; ++j) {
        const double c = ritz_coeffs(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(e));
        for (std::size_t i = 0; i < n; ++i) out.vectors[e][i] += c * basis[j][i];
      }
      normalize(out.vectors[e]);
    }
    // True residual of the Fiedler pair.
    if (count > 0) {
      apply_laplacian(g, out.vectors[0], w);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = w[i] - out.values[0] * out.vectors[0][i];
        r2 += d * d;
      }
      out.residual = std::sqrt(r2) / op_norm;
      if (!invariant) out.converged = out.residual <= opts.tolerance;
    }
    out.iterations = matvecs;
    if (out.converged) return out;
    if (matvecs >= opts.max_iterations) throw EigenNotConverged(matvecs, out.residual, out);
    // Explicit restart from the sum of the wanted Ritz vectors.
    std::fill(start.begin(), start.end(), 0.0);
    for (const auto& v : out.vectors) {
      for (std::size_t i = 0; i < n; ++i) start[i] += v[i];
    }
  }
}

std::vector<int> connected_components(const ProximityGraph& g, int* count) {
  const std::size_t n = g.size();
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int j : g.neighbors(v)) {
        if (label[j] < 0) {
          label[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

CutResult sweep_cut(const ProximityGraph& g, std::span<const double> values, const Objective& o) {
  const std::size_t n = g.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  const double scale = g.functional_scale();
  std::vector<std::uint8_t> in(n, 0);
  std::int64_t cut = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t best_k = 1;
  auto prefix_mask = [&](std::size_t k) {
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < k; ++i) mask[order[i]] = 1;
    return canonical_mask(mask);
  };
  for (std::size_t k = 1; k < n; ++k) {
    const int v = order[k - 1];
    std::int64_t inside = 0;
    for (int j : g.neighbors(v)) inside += in[j];
    cut += static_cast<std::int64_t>(g.degree(v)) - 2 * inside;
    in[v] = 1;
    const double val = objective_from_counts(o, cut, k, n, scale).value;
    if (objective_less(val, best_val)) {
      best_val = val;
      best_k = k;
    } else if (objective_tie(val, best_val) && k != best_k &&
               lexicographically_smaller(prefix_mask(k), prefix_mask(best_k))) {
      best_k = k;
    }
  }
  if (n < 2) return make_cut_result(g, std::vector<std::uint8_t>(n, 1), o,
                                    SolverKind::SpectralSweep, Certificate::Heuristic);
  return make_cut_result(g, prefix_mask(best_k), o, SolverKind::SpectralSweep,
                         Certificate::Heuristic);
}

namespace {

bool better_cut(const CutResult& a, const CutResult& b, std::size_t n) {
  if (objective_less(a.objective_value, b.objective_value)) return true;
  if (!objective_tie(a.objective_value, b.objective_value)) return false;
  return lexicographically_smaller(subset_mask(n, a.subset), subset_mask(n, b.subset));
}

CutResult sweep_eigenvectors(const ProximityGraph& g, const EigenPairs& pairs, const Objective& o) {
  std::vector<std::vector<double>> candidates = pairs.vectors;
  const std::size_t base = std::min<std::size_t>(pairs.vectors.size(), 4);
  for (std::size_t a = 0; a < base; ++a) {
    for (std::size_t b = a + 1; b < base; ++b) {
      std::vector<double> plus(g.size()), minus(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        plus[i] = pairs.vectors[a][i] + pairs.vectors[b][i];
        minus[i] = pairs.vectors[a][i] - pairs.vectors[b][i];
      }
      candidates.push_back(std::move(plus));
      candidates.push_back(std::move(minus));
    }
  }
  CutResult best;
  bool have = false;
  for (const auto& v : candidates) {
    CutResult r = sweep_cut(g, v, o);
    if (!have || better_cut(r, best, g.size())) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

std::optional<CutResult> component_split(const ProximityGraph& g, const Objective& o) {
  int count = 0;
  const auto label = connected_components(g, &count);
  if (count <= 1) return std::nullopt;
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) mask[i] = label[i] == 0;
  return make_cut_result(g, mask, o, SolverKind::SpectralSweep, Certificate::Heuristic);
}

}  // namespace

CutResult solve_spectral_sweep(const ProximityGraph& g, const Objective& o,
                               const SpectralOptions& opts) {
  const auto t0 = Clock::now();
  if (auto split = component_split(g, o)) {
    split->elapsed = seconds_since(t0);
    return *split;
  }
  if (g.size() < 2) {
    auto r = make_cut_result(g, std::vector<std::uint8_t>(g.size(), 1), o,
                             SolverKind::SpectralSweep, Certificate::Heuristic);
    r.elapsed = seconds_since(t0);
    return r;
  }
  const EigenPairs pairs = laplacian_eigenpairs(g, opts);
  CutResult r = sweep_eigenvectors(g, pairs, o);
  r.eigen_residual = pairs.residual;
  r.elapsed = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Local search

CutResult refine_local_search(const ProximityGraph& g, const CutResult& start, const Objective& o,
                              std::size_t max_passes) {
  const auto t0 = Clock::now();
  const std::size_t n = g.size();
  auto mask = subset_mask(n, start.subset);
  std::vector<std::int64_t> inside(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (int j : g.neighbors(v)) inside[v] += mask[j];
  }
  std::int64_t cut = cut_count(g, mask);
  std::size_t size = start.subset.size();
  const double scale = g.functional_scale();
  double current = objective_from_counts(o, cut, size, n, scale).value;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    int best_v = -1;
    double best_val = current;
    std::int64_t best_cut = cut;
    for (std::size_t v = 0; v < n; ++v) {
      const std::int64_t deg = static_cast<std::int64_t>(g.degree(v));
      const std::int64_t new_cut = mask[v] ? cut - deg + 2 * inside[v] : cut + deg - 2 * inside[v];
      const std::size_t new_size = mask[v] ? size - 1 : size + 1;
      const double val = objective_from_counts(o, new_cut, new_size, n, scale).value;
      if (objective_less(val, best_val)) {
        best_val = val;
        best_v = static_cast<int>(v);
        best_cut = new_cut;
      }
    }
    if (best_v < 0) break;
    const int sign = mask[best_v] ? -1 : 1;
    mask[best_v] = mask[best_v] ? 0 : 1;
    for (int j : g.neighbors(best_v)) inside[j] += sign;
    size = sign > 0 ? size + 1 : size - 1;
    cut = best_cut;
    current = best_val;
  }
  CutResult r = make_cut_result(g, mask, o, SolverKind::LocalSearch, Certificate::Heuristic);
  r.eigen_residual = start.eigen_residual;
  r.degraded = start.degraded;
  r.elapsed = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Pipeline

CutResult solve_pipeline(const ProximityGraph& g, const Objective& o, const PipelineOptions& opts,
                         const PointCloud* cloud) {
  const auto t0 = Clock::now();
  const std::size_t passes = opts.max_passes ? opts.max_passes : std::max<std::size_t>(g.size(), 1);
  std::vector<CutResult> starts;
  std::optional<double> residual;
  bool degraded = false;
  if (auto split = component_split(g, o)) {
    starts.push_back(*split);
  } else if (g.size() >= 2) {
    try {
      const EigenPairs pairs = laplacian_eigenpairs(g, opts.spectral);
      residual = pairs.residual;
      starts.push_back(sweep_eigenvectors(g, pairs, o));
    } catch (const EigenNotConverged& e) {
      degraded = true;
      residual = e.residual();
      if (!e.best().vectors.empty()) starts.push_back(sweep_eigenvectors(g, e.best(), o));
    }
  }
  if (cloud != nullptr && cloud->manifold && cloud->manifold->kind() == ManifoldKind::Circle) {
    starts.push_back(solve_arc_sweep(g, *cloud, o));
  }
  if (starts.empty()) {
    std::vector<std::uint8_t> mask(g.size(), 0);
    if (!mask.empty()) mask[0] = 1;
    starts.push_back(make_cut_result(g, mask, o, SolverKind::LocalSearch, Certificate::Heuristic));
  }
  CutResult best;
  bool have = false;
  for (const auto& s : starts) {
    CutResult refined = refine_local_search(g, s, o, passes);
    for (const CutResult* c : std::array<const CutResult*, 2>{&s, &refined}) {
      if (!have || better_cut(*c, best, g.size())) {
        best = *c;
        have = true;
      }
    }
  }
  best.solver = SolverKind::Pipeline;
  best.certificate = Certificate::Heuristic;
  best.eigen_residual = residual;
  best.degraded = degraded;
  best.elapsed = seconds_since(t0);
  return best;
}

}  // namespace cheeger
