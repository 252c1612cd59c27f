#pragma once
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "domain.hpp"
#include "ellipsoid.hpp"
#include "geodesics.hpp"
#include "metric.hpp"
#include "mobius.hpp"

namespace kobalab {

struct ConvergenceRow {
  double t = 0.0;
  std::string key;
  double deviation = 0.0;
  double gap = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  double max_deviation() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.deviation);
    return m;
  }
  // Non-increasing along the rows, ignoring changes below noise.
  bool monotone(double noise = 0.0) const {
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].deviation > rows[k - 1].deviation + noise) return false;
    return true;
  }
};

// Rounding floor below which persistence deviations count as equal.
inline constexpr double kPersistenceNoise = 1e-12;

// B(0, r_in) inside Omega_t inside B(0, r_out).
struct SandwichRadii {
  double r_in;
  double r_out;
};

// Omega_0 lies in the unit ball (rho >= -1 + |z|^2) and A_t preserves it, so r_out = 1.
inline SandwichRadii sandwich_radii(double eps, ScalingParameter t, Eigen::Index N) {
  return {ellipsoid_inscribed_radius(eps, t.value(), N), 1.0};
}

// Quasi-random pairs in the closed ball of radius r0 of C^N (the first pair is (0, 0)).
inline std::vector<std::pair<ComplexPoint, ComplexPoint>> scaling_grid(Eigen::Index N, double r0 = 0.5, int points = 12) {
  std::vector<ComplexPoint> pts{ComplexPoint(N)};
  std::uint64_t k = 1;
  while (static_cast<int>(pts.size()) < points) {
    const auto h = halton(k++, static_cast<int>(2 * N));
    ComplexPoint z(N);
    for (Eigen::Index j = 0; j < N; ++j)
      z[j] = Complex(r0 * (2.0 * h[static_cast<std::size_t>(2 * j)] - 1.0),
                     r0 * (2.0 * h[static_cast<std::size_t>(2 * j + 1)] - 1.0));
    if (norm(z) <= r0) pts.push_back(z);
  }
  std::vector<std::pair<ComplexPoint, ComplexPoint>> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) out.emplace_back(pts[i], pts[j]);
  return out;
}

// Certified sup |K_{Omega_t} - K_B| over the grid, from K_B <= K_{Omega_t} <= K_{B(0, r_in)}.
inline ConvergenceTable metric_convergence_probe(double eps, const std::vector<double>& ts,
                                                 const std::vector<std::pair<ComplexPoint, ComplexPoint>>& grid) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "empty grid");
  const Eigen::Index N = grid.front().first.size();
  ConvergenceTable tab;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    require(i == 0 || ts[i] > ts[i - 1], ErrorCode::InvalidArgument, "ts must increase");
    const SandwichRadii r = sandwich_radii(eps, ScalingParameter(ts[i]), N);
    double dev = 0.0;
    for (const auto& [z, w] : grid) {
      require(norm(z) < r.r_in && norm(w) < r.r_in, ErrorCode::NotInterior,
              "grid point outside the inscribed ball of Omega_t at t = " + std::to_string(ts[i]));
      const double lo = ball_distance(z, w);
      const double hi = r.r_in == 1.0 ? lo : ball_distance((1.0 / r.r_in) * z, (1.0 / r.r_in) * w);
      dev = std::max(dev, hi - lo);
    }
    tab.rows.push_back({ts[i], "sup-grid", dev, dev});
  }
  return tab;
}

// Rays from A_t(w0) to e1, pulled back by A_t^{-1}, against the fixed ray from w0 on [0, window].
// For eps > 0 the gap column carries max rho_t along the fixed ray (positive: the ray leaves Omega_t).
inline ConvergenceTable geodesic_persistence_probe(double eps, const std::vector<double>& ts, const ComplexPoint& w0,
                                                   double window = 5.0, int samples = 64) {
  const Eigen::Index N = w0.size();
  require(norm(w0) < 1.0, ErrorCode::NotInterior, "w0 must lie in the unit ball");
  const ModelDomain ball = detail::ball_like(N);
  const BoundaryPoint e = BoundaryPoint::make(ball, e1(N));
  const GeodesicCurve eta = ball_landing_ray(N, w0, e);
  ConvergenceTable tab;
  for (double tv : ts) {
    const ScalingParameter t(tv);
    const GeodesicCurve ray = ball_landing_ray(N, scaling_automorphism(t, w0), e);
    double dev = 0.0, defect = -1.0;
    for (int k = 0; k <= samples; ++k) {
      const double s = window * k / samples;
      dev = std::max(dev, euclid(scaling_inverse(t, ray(s)), eta(s)));
      if (eps > 0.0) defect = std::max(defect, ellipsoid_defining_function(eps, scaling_automorphism(t, eta(s))));
    }
    tab.rows.push_back({tv, "sup-window", dev, eps > 0.0 ? std::max(0.0, defect) : 0.0});
  }
  return tab;
}

struct DivergenceRow {
  double t;
  double re_pi1;  // Re of the first coordinate of A_t^{-1}(seed)
  double norm;
  bool band;      // 0 < re_pi1 < 1 - band_eps
};

struct DivergenceReport {
  std::vector<DivergenceRow> rows;
  bool divergent = false;  // the rescaled seeds approach the sphere
};

inline DivergenceReport compactly_divergent_probe(const std::vector<double>& ts, const std::vector<ComplexPoint>& seeds,
                                                  double band_eps = 0.5, double sphere_tol = 0.02) {
  require(ts.size() == seeds.size() && !ts.empty(), ErrorCode::InvalidArgument, "one seed per scaling parameter");
  DivergenceReport r;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const ComplexPoint p = scaling_inverse(ScalingParameter(ts[k]), seeds[k]);
    const double re = p[0].real();
    r.rows.push_back({ts[k], re, norm(p), re > 0.0 && re < 1.0 - band_eps});
  }
  r.divergent = 1.0 - r.rows.back().norm < sphere_tol;
  return r;
}

// Sup over directions with Re omega_1 > beta of |r(omega) - 1|, r the exit radius of Omega_t.
inline double boundary_graph_deviation(double eps, ScalingParameter t, Eigen::Index N, double beta = 0.0, int na = 24,
                                       int nb = 48) {
  double worst = 0.0;
  for (int i = 0; i < (N == 1 ? 1 : na); ++i) {
    const double a = N == 1 ? 0.0 : 0.5 * kPi * i / (na - 1);
    for (int j = 0; j < nb; ++j) {
      const ComplexPoint w = detail::ellipsoid_direction(N, a, -kPi + 2.0 * kPi * j / nb);
      if (w[0].real() <= beta) continue;
      auto f = [&](double s) {
        return ellipsoid_defining_function(eps, scaling_automorphism(t, s * w)) < 0.0 ? -1.0 : 1.0;
      };
      worst = std::max(worst, std::abs(bisect(f, 0.0, 1.0 + 1e-9, 1e-14) - 1.0));
    }
  }
  return worst;
}

}  // namespace kobalab
