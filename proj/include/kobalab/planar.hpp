#pragma once
#include <cmath>
#include <complex>

#include "error.hpp"
#include "numerics.hpp"
#include "point.hpp"

namespace kobalab {

// artanh(x) as 0.5*log1p(2x/(1-x)), with 1 - x supplied from an exactly formed 1 - x^2.
inline double artanh_stable(double x, double one_minus_x_sq) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x_sq <= 0.0) return std::numeric_limits<double>::infinity();
  const double one_minus_x = one_minus_x_sq / (1.0 + x);
  return 0.5 * std::log1p(2.0 * x / one_minus_x);
}

inline double artanh_stable(double x) { return artanh_stable(x, (1.0 - x) * (1.0 + x)); }

// Poincare distance on the unit disc.
inline double disc_distance(Complex z, Complex w) {
  if (z == w) return 0.0;
  const Complex den = 1.0 - std::conj(w) * z;
  const double x = std::abs(z - w) / std::abs(den);
  const double m = (1.0 - std::abs(z)) * (1.0 + std::abs(z)) * (1.0 - std::abs(w)) * (1.0 + std::abs(w)) / std::norm(den);
  return artanh_stable(std::min(x, 1.0), m);
}

inline double disc_metric(Complex z, Complex v) {
  const double r = std::abs(z);
  return std::abs(v) / ((1.0 - r) * (1.0 + r));
}

// Upper half-plane {Im > 0}.
inline double upper_half_plane_distance(Complex p, Complex q) {
  if (p == q) return 0.0;
  const double num = std::abs(p - q), den = std::abs(p - std::conj(q));
  const double m = 4.0 * p.imag() * q.imag() / (den * den);
  return artanh_stable(std::min(num / den, 1.0), m);
}

// Left half-plane {Re < 0}; the exp cover of the punctured disc.
inline double left_half_plane_distance(Complex a, Complex b) {
  if (a == b) return 0.0;
  const double num = std::abs(a - b), den = std::abs(a + std::conj(b));
  const double m = 4.0 * a.real() * b.real() / (den * den);
  return artanh_stable(std::min(num / den, 1.0), m);
}

inline double left_half_plane_metric(Complex a, Complex v) { return std::abs(v) / (2.0 * std::abs(a.real())); }

// Vertical strip {lo < Re < hi}, sent to the upper half-plane by exp(i pi (z - lo) / w).
struct StripModel {
  double lo, hi;

  double width() const { return hi - lo; }

  double distance(Complex a, Complex b) const {
    if (a == b) return 0.0;
    const double w = width();
    const double mid = 0.5 * (a.imag() + b.imag());
    const Complex ia(a.real() - lo, a.imag() - mid), ib(b.real() - lo, b.imag() - mid);
    const Complex I(0.0, 1.0);
    const Complex p = std::exp(I * kPi * ia / w), q = std::exp(I * kPi * ib / w);
    return upper_half_plane_distance(p, q);
  }

  double metric(Complex a, Complex v) const {
    const double w = width();
    return kPi / (2.0 * w) * std::abs(v) / std::sin(kPi * (a.real() - lo) / w);
  }

  // Certified lower bound from the Im offset alone.
  double im_lower_bound(double dim) const { return kPi * std::abs(dim) / (2.0 * width()); }

  bool contains(Complex a) const { return a.real() > lo && a.real() < hi; }
};

}  // namespace kobalab
