#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace kobalab {

inline constexpr double kPi = std::numbers::pi;

// Golden-section minimisation on [a, b]; returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol = 1e-8, int max_iter = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Grid scan followed by golden refinement around the best few cells; minimises f on [a, b].
template <class F>
std::pair<double, double> scan_min(F&& f, double a, double b, int grid = 64, double tol = 1e-10, int keep = 3) {
  std::vector<std::pair<double, int>> vals;
  vals.reserve(grid + 1);
  const double h = (b - a) / grid;
  for (int k = 0; k <= grid; ++k) vals.emplace_back(f(a + k * h), k);
  std::vector<std::pair<double, int>> sorted = vals;
  std::partial_sort(sorted.begin(), sorted.begin() + std::min<int>(keep, grid + 1), sorted.end());
  std::pair<double, double> best{a + sorted[0].second * h, sorted[0].first};
  for (int j = 0; j < std::min<int>(keep, grid + 1); ++j) {
    const int k = sorted[j].second;
    const double lo = a + std::max(0, k - 1) * h, hi = a + std::min(grid, k + 1) * h;
    auto r = golden_min(f, lo, hi, tol);
    if (r.second < best.second) best = r;
  }
  return best;
}

// Bisection for a sign change of f on [a, b]; f(a) and f(b) must differ in sign.
template <class F>
double bisect(F&& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
  double fa = f(a);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Radical inverse in a prime base; the Halton point k uses the first d primes.
inline double radical_inverse(std::uint64_t k, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

inline std::vector<double> halton(std::uint64_t k, int d) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) p[static_cast<std::size_t>(j)] = radical_inverse(k + 1, primes[j % 12]);
  return p;
}

// Seeded generator for tests and probes. mt19937_64 output is specified by the standard;
// uniform draws are built by hand so results do not depend on the library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * uniform());
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kobalab
