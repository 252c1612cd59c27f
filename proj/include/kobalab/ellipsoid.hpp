#pragma once
#include <algorithm>
#include <cmath>

#include "mobius.hpp"
#include "numerics.hpp"
#include "point.hpp"

namespace kobalab {

// rho(z) = -1 + |z|^2 + eps |z - e1|^4; Omega_0 = {rho < 0}.
inline double ellipsoid_defining_function(double eps, const ComplexPoint& z) {
  require(eps >= 0.0 && std::isfinite(eps), ErrorCode::InvalidArgument, "eps must be >= 0");
  check_point(z);
  const double d2 = norm_sq(z - e1(z.size()));
  return -1.0 + norm_sq(z) + eps * d2 * d2;
}

// True iff A_t(z) lies in Omega_0.
inline bool scaled_domain_membership(double eps, ScalingParameter t, const ComplexPoint& z) {
  return ellipsoid_defining_function(eps, scaling_automorphism(t, z)) < 0.0;
}

namespace detail {

// Direction (cos a e^{ib}, sin a, 0, ...) in C^N; unitary symmetry in z' makes this family exhaustive.
inline ComplexPoint ellipsoid_direction(Eigen::Index n, double a, double b) {
  ComplexPoint w(n);
  w[0] = std::polar(n == 1 ? 1.0 : std::cos(a), b);
  if (n > 1) w[1] = std::sin(a);
  return w;
}

// Radius s in (0, 1] with rho(s * omega) = 0 on the ray from the origin.
inline double ellipsoid_ray_exit(double eps, const ComplexPoint& omega) {
  auto f = [&](double s) { return ellipsoid_defining_function(eps, s * omega); };
  if (f(1.0) <= 0.0) return 1.0;
  return bisect(f, 0.0, 1.0, 1e-15);
}

// 1 - |A_{-t} w|^2 for w on the boundary of Omega_0 in direction (a, b).
inline double inscribed_defect(double eps, double t, Eigen::Index n, double a, double b) {
  const ComplexPoint w = ellipsoid_ray_exit(eps, ellipsoid_direction(n, a, b)) * ellipsoid_direction(n, a, b);
  const double one_minus_w = std::max(0.0, -(norm_sq(w) - 1.0));
  return (1.0 - t) * (1.0 + t) * one_minus_w / std::norm(1.0 - t * w[0]);
}

}  // namespace detail

// Radius of the largest ball about 0 inside Omega_t (the circumscribed ball is the unit ball).
inline double ellipsoid_inscribed_radius(double eps, double t, Eigen::Index n) {
  require(eps >= 0.0 && eps < 1.0, ErrorCode::InvalidArgument, "eps must lie in [0, 1)");
  require(t >= 0.0 && t < 1.0, ErrorCode::InvalidArgument, "t must lie in [0, 1)");
  require(n >= 1, ErrorCode::InvalidArgument, "N >= 1");
  if (eps == 0.0) return 1.0;
  ComplexPoint at0(n);
  at0[0] = t;
  if (ellipsoid_defining_function(eps, at0) >= 0.0) return 0.0;
  const int na = n == 1 ? 1 : 96, nb = 192;
  double best = 0.0, ba = 0.0, bb = 0.0;
  for (int i = 0; i < na; ++i) {
    const double a = n == 1 ? 0.0 : 0.5 * kPi * i / (na - 1);
    for (int j = 0; j < nb; ++j) {
      const double b = -kPi + 2.0 * kPi * j / nb;
      const double g = detail::inscribed_defect(eps, t, n, a, b);
      if (g > best) best = g, ba = a, bb = b;
    }
  }
  // Coordinate refinement around the best grid cell.
  double ha = n == 1 ? 0.0 : 0.5 * kPi / (na - 1), hb = 2.0 * kPi / nb;
  for (int round = 0; round < 6; ++round) {
    if (n > 1) {
      auto fa = [&](double a) { return -detail::inscribed_defect(eps, t, n, a, bb); };
      auto r = golden_min(fa, std::max(0.0, ba - ha), std::min(0.5 * kPi, ba + ha), 1e-13);
      if (-r.second > best) best = -r.second, ba = r.first;
    }
    auto fb = [&](double b) { return -detail::inscribed_defect(eps, t, n, ba, b); };
    auto r = golden_min(fb, bb - hb, bb + hb, 1e-13);
    if (-r.second > best) best = -r.second, bb = r.first;
    ha *= 0.5;
    hb *= 0.5;
  }
  // Small margin so the sampled maximum errs toward a smaller (still inscribed) ball.
  best = best * (1.0 + 1e-9) + 1e-15;
  return std::sqrt(std::max(0.0, 1.0 - best));
}

}  // namespace kobalab
