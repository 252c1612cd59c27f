#pragma once
#include <cmath>

#include "error.hpp"
#include "point.hpp"

namespace kobalab {

// t in [0, 1)
class ScalingParameter {
 public:
  explicit ScalingParameter(double t) : t_(t) {
    require(std::isfinite(t) && t >= 0.0 && t < 1.0, ErrorCode::InvalidArgument, "scaling parameter must lie in [0,1)");
  }
  double value() const { return t_; }

 private:
  double t_;
};

// A_s for any s in (-1, 1): (z1 + s, sqrt(1 - s^2) z') / (1 + s z1). A_s^{-1} = A_{-s}.
inline ComplexPoint apply_scaling(double s, const ComplexPoint& z) {
  require(std::abs(s) < 1.0, ErrorCode::InvalidArgument, "scaling parameter must satisfy |t| < 1");
  const Complex den = 1.0 + s * z[0];
  require(std::abs(den) > 1e-300, ErrorCode::Pole, "1 + t z1 = 0");
  ComplexPoint w(z.size());
  w[0] = (z[0] + s) / den;
  const double c = std::sqrt((1.0 - s) * (1.0 + s));
  for (Eigen::Index j = 1; j < z.size(); ++j) w[j] = c * z[j] / den;
  return w;
}

inline ComplexPoint scaling_automorphism(ScalingParameter t, const ComplexPoint& z) {
  check_point(z);
  return apply_scaling(t.value(), z);
}

inline ComplexPoint scaling_inverse(ScalingParameter t, const ComplexPoint& z) {
  check_point(z);
  return apply_scaling(-t.value(), z);
}

// Differential of A_s at z applied to v.
inline ComplexPoint scaling_pushforward(double s, const ComplexPoint& z, const ComplexPoint& v) {
  const Complex den = 1.0 + s * z[0];
  require(std::abs(den) > 1e-300, ErrorCode::Pole, "1 + t z1 = 0");
  ComplexPoint out(z.size());
  out[0] = (1.0 - s * s) * v[0] / (den * den);
  const double c = std::sqrt((1.0 - s) * (1.0 + s));
  for (Eigen::Index j = 1; j < z.size(); ++j) out[j] = c * (v[j] / den - s * z[j] * v[0] / (den * den));
  return out;
}

// Involutive ball automorphism exchanging a and 0.
inline ComplexPoint ball_involution(const ComplexPoint& a, const ComplexPoint& z) {
  const double aa = norm_sq(a);
  if (aa == 0.0) return -1.0 * z;
  const Complex za = inner(z, a);
  const ComplexVector Pz = (za / aa) * a.vec();
  const ComplexVector Qz = z.vec() - Pz;
  const double sa = std::sqrt(1.0 - aa);
  const Complex den = 1.0 - za;
  require(std::abs(den) > 1e-300, ErrorCode::Pole, "ball involution pole");
  return ComplexPoint(ComplexVector((a.vec() - Pz - sa * Qz) / den));
}

// Disc automorphism exchanging a and 0.
inline Complex disc_involution(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

}  // namespace kobalab
