#pragma once
// Seeded generators and a small property runner for the test suites.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include <kobalab/kobalab.hpp>

namespace kt {

using namespace kobalab;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  double angle() { return uniform(-kPi, kPi); }

  // Uniform in the ball of radius r in C^N (rejection from the cube).
  ComplexPoint ball(Eigen::Index N, double r = 0.95) {
    for (;;) {
      ComplexPoint z(N);
      for (Eigen::Index j = 0; j < N; ++j) z[j] = Complex(uniform(-r, r), uniform(-r, r));
      if (norm(z) < r) return z;
    }
  }
  ComplexPoint disc(double r = 0.95) { return ball(1, r); }
  ComplexPoint punctured(double rmin = 1e-3, double rmax = 0.95) {
    return ComplexPoint{std::polar(uniform(rmin, rmax), angle())};
  }
  ComplexPoint annulus(double R) {
    return ComplexPoint{std::polar(std::exp(uniform(-0.95, 0.95) * std::log(R)), angle())};
  }
  ComplexPoint strip(double R, double im = 4.0) {
    return ComplexPoint{Complex(uniform(-0.95, 0.95) * std::log(R), uniform(-im, im))};
  }
  ComplexPoint polydisc(Eigen::Index N) {
    ComplexPoint z(N);
    for (Eigen::Index j = 0; j < N; ++j) z[j] = disc()[0];
    return z;
  }
  RealVector in_ball(Eigen::Index n, double r) {
    for (;;) {
      RealVector x(n);
      for (Eigen::Index j = 0; j < n; ++j) x[j] = uniform(-r, r);
      if (x.norm() < r) return x;
    }
  }
  // Point of Reinhardt(unit ball) with log-moduli inside radius r.
  ComplexPoint reinhardt_ball(Eigen::Index n, double r = 0.9) {
    const RealVector x = in_ball(n, r);
    ComplexPoint z(n);
    for (Eigen::Index j = 0; j < n; ++j) z[j] = std::polar(std::exp(x[j]), angle());
    return z;
  }

  // An interior point of any closed-form or deck kind used in the property suites.
  ComplexPoint interior(const ModelDomain& d) {
    if (d.is<UnitDisc>()) return disc();
    if (d.is<PuncturedDisc>()) return punctured();
    if (d.is<Annulus>()) return annulus(d.as<Annulus>().R);
    if (d.is<Strip>()) return strip(d.as<Strip>().R);
    if (d.is<LeftHalfPlane>()) return ComplexPoint{Complex(-std::exp(uniform(-3, 2)), uniform(-4, 4))};
    if (d.is<UnitBall>()) return ball(d.dim());
    if (d.is<Polydisc>()) return polydisc(d.dim());
    if (d.is<ReinhardtLog>()) return reinhardt_ball(d.dim());
    ADD_FAILURE() << "no generator for " << d.name();
    return ComplexPoint(d.dim());
  }

 private:
  std::mt19937_64 rng_;
};

// Runs prop(gen, case) for count cases; the first failing case index is reported by the caller's expectations.
inline void for_all(std::uint64_t seed, int count, const std::function<void(Gen&, int)>& prop) {
  Gen g(seed);
  for (int k = 0; k < count; ++k) {
    SCOPED_TRACE("seed " + std::to_string(seed) + " case " + std::to_string(k));
    prop(g, k);
    if (::testing::Test::HasFailure()) return;
  }
}

// Composite Simpson on [a, b] with n (even) panels; an oracle independent of the library's adaptive rules.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

// Poincare distance from the pseudo-hyperbolic quotient, written out independently of the library.
inline double poincare(Complex z, Complex w) {
  const double rho = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
  return 0.5 * std::log((1.0 + rho) / (1.0 - rho));
}

// H_R distance through z -> exp(i pi z / (2 log R)) onto the right half-plane, where
// d(p, q) = log((|p + conj q| + |p - q|) / (2 sqrt(Re p Re q))) has no cancellation.
inline double strip_oracle(double R, Complex a, Complex b) {
  const double L = std::log(R);
  const Complex p = std::exp(Complex(0.0, 1.0) * kPi * a / (2.0 * L)), q = std::exp(Complex(0.0, 1.0) * kPi * b / (2.0 * L));
  const double rp = std::exp(-kPi * a.imag() / (2.0 * L)) * std::cos(kPi * a.real() / (2.0 * L));
  const double rq = std::exp(-kPi * b.imag() / (2.0 * L)) * std::cos(kPi * b.real() / (2.0 * L));
  return std::log((std::abs(p + std::conj(q)) + std::abs(p - q)) / (2.0 * std::sqrt(rp * rq)));
}

}  // namespace kt
