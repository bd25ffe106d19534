#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cheeger {

inline constexpr double kPi = 3.14159265358979323846;

/// Neumaier compensated accumulator. Results depend only on the order of
/// add() calls, which callers keep fixed.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_total(std::span<const double> values);

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

/// 64-bit FNV-1a, stable across platforms (used for digests).
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Uniform double in [0,1) built from the top 53 bits of a 64-bit draw, so
/// streams are identical on every standard library.
template <class Rng>
double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal pair via Box-Muller.
template <class Rng>
std::pair<double, double> normal_pair(Rng& rng) {
  double u1 = unit_uniform(rng);
  while (u1 <= 0.0) u1 = unit_uniform(rng);
  const double u2 = unit_uniform(rng);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  return {rad * std::cos(2.0 * kPi * u2), rad * std::sin(2.0 * kPi * u2)};
}

/// Golden-section minimization of a unimodal function on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double tol);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, b] with a composite Gauss rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int order = 20, int panels = 1);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Results must
/// be written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Median of a copy of the values (mean of the middle pair for even sizes).
double median(std::vector<double> values);

/// Wraps x into [0, 1).
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

/// Distance between two coordinates on the unit circle R/Z, in [0, 1/2].
inline double periodic_gap(double a, double b) {
  const double d = std::abs(wrap_unit(a) - wrap_unit(b));
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace cheeger
