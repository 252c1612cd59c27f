#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "convex_base.hpp"
#include "extremal.hpp"
#include "numerics.hpp"
#include "planar.hpp"
#include "point.hpp"

namespace kobalab {

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
  double gap() const { return upper - lower; }
};

struct TubeOptions {
  int direction_factor = 64;       // slab directions per real dimension
  bool refine = true;              // run the extremal solver for ball bases when the cheap gap is open
  double refine_threshold = 1e-10;
};

namespace detail {

// <d, z> for real d and complex z.
inline Complex pairing(const RealVector& d, const ComplexPoint& z) {
  Complex s = 0.0;
  for (Eigen::Index j = 0; j < d.size(); ++j) s += d[j] * z[j];
  return s;
}

inline double slab_distance(const ConvexBase& base, const RealVector& d, const ComplexPoint& u, const ComplexPoint& v) {
  const auto [lo, hi] = base.slab(d);
  return StripModel{lo, hi}.distance(pairing(d, u), pairing(d, v));
}

inline double slab_metric(const ConvexBase& base, const RealVector& d, const ComplexPoint& u, const ComplexPoint& v) {
  const auto [lo, hi] = base.slab(d);
  return StripModel{lo, hi}.metric(pairing(d, u), pairing(d, v));
}

// Unit directions: a half circle in 2D, a Fibonacci sphere in higher dimension.
inline std::vector<RealVector> direction_sample(Eigen::Index n, int factor) {
  std::vector<RealVector> out;
  const int count = factor * static_cast<int>(n);
  if (n == 1) {
    out.push_back(RealVector::Ones(1));
  } else if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double a = kPi * k / count;
      out.push_back(real_vector({std::cos(a), std::sin(a)}));
    }
  } else {
    // Gaussian-mapped Halton points, normalised.
    for (int k = 0; k < count; ++k) {
      auto h = halton(static_cast<std::uint64_t>(k), static_cast<int>(2 * n));
      RealVector d(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double u1 = std::max(1e-12, h[static_cast<std::size_t>(2 * j)]);
        d[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * h[static_cast<std::size_t>(2 * j + 1)]);
      }
      if (d.norm() > 0) out.push_back(d.normalized());
    }
  }
  return out;
}

// Maximise a function of unit directions: sample, then local refinement of the best one.
template <class F>
std::pair<double, RealVector> maximise_over_directions(Eigen::Index n, int factor, const std::vector<RealVector>& extra,
                                                       F&& value) {
  std::vector<RealVector> dirs = direction_sample(n, factor);
  for (const auto& e : extra)
    if (e.size() == n && e.norm() > 0) dirs.push_back(e.normalized());
  double best = -1.0;
  RealVector bd = dirs.front();
  for (const auto& d : dirs) {
    const double v = value(d);
    if (v > best) best = v, bd = d;
  }
  if (n == 2) {
    const double a0 = std::atan2(bd[1], bd[0]), h = kPi / (factor * 2);
    auto f = [&](double a) { return -value(real_vector({std::cos(a), std::sin(a)})); };
    auto r = golden_min(f, a0 - h, a0 + h, 1e-10);
    if (-r.second > best) best = -r.second, bd = real_vector({std::cos(r.first), std::sin(r.first)});
  } else if (n > 2) {
    // Pattern search over rotations in coordinate planes.
    double step = 0.1;
    for (int round = 0; round < 40 && step > 1e-9; ++round) {
      bool improved = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
          RealVector d = bd + sgn * step * RealVector::Unit(n, i);
          d.normalize();
          const double v = value(d);
          if (v > best) best = v, bd = d, improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
  }
  return {best, bd};
}

inline std::vector<RealVector> extra_directions(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v) {
  std::vector<RealVector> extra = base.facet_normals();
  const Eigen::Index n = base.dim();
  for (Eigen::Index j = 0; j < n; ++j) extra.push_back(RealVector::Unit(n, j));
  extra.push_back(v.re() - u.re());
  extra.push_back(v.im() - u.im());
  return extra;
}

// Chord {s : p + s e in base} for a real unit e; p inside.
inline std::pair<double, double> chord(const ConvexBase& base, const RealVector& p, const RealVector& e) {
  if (base.is_ball()) {
    const RealVector q = p - base.as_ball().center;
    const double R = base.as_ball().radius;
    const double b = q.dot(e), c = q.squaredNorm() - R * R;
    const double disc = std::sqrt(std::max(0.0, b * b - c));
    return {-b - disc, -b + disc};
  }
  std::vector<std::pair<RealVector, double>> hs;
  if (base.is_box()) {
    const auto& bx = base.as_box();
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      hs.emplace_back(RealVector::Unit(p.size(), j), bx.hi[j]);
      hs.emplace_back(-RealVector::Unit(p.size(), j), -bx.lo[j]);
    }
  } else {
    for (const auto& f : base.as_polytope().facets) hs.emplace_back(f.normal, f.offset);
  }
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& [nrm, off] : hs) {
    const double a = nrm.dot(e), slack = off - nrm.dot(p);
    if (std::abs(a) < 1e-300) continue;
    if (a > 0) hi = std::min(hi, slack / a);
    else lo = std::max(lo, slack / a);
  }
  return {lo, hi};
}

// Slice of the tube by the complex line u + zeta (v - u), as a region in the zeta plane.
class Slice {
 public:
  Slice(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& e) : base_(base), p_(u.re()), A_(e.re()), B_(e.im()) {}

  // Euclidean distance from zeta to the slice boundary.
  double inradius(Complex zeta) const {
    const RealVector w0 = p_ + zeta.real() * A_ - zeta.imag() * B_;
    if (!base_.contains(w0)) return 0.0;
    if (base_.is_ball()) {
      const RealVector q = w0 - base_.as_ball().center;
      const double R = base_.as_ball().radius;
      auto exit = [&](double phi) {
        const RealVector m = std::cos(phi) * A_ - std::sin(phi) * B_;
        const double mm = m.squaredNorm();
        if (mm == 0) return std::numeric_limits<double>::infinity();
        const double beta = q.dot(m);
        const double c = R * R - q.squaredNorm();
        return c / (beta + std::sqrt(beta * beta + mm * c));
      };
      auto r = scan_min(exit, 0.0, 2.0 * kPi, 128, 1e-12, 4);
      return r.second * (1.0 - 1e-12);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [nrm, off] : halfspaces()) {
      const double gx = nrm.dot(A_), gy = -nrm.dot(B_);
      const double g = std::hypot(gx, gy);
      if (g == 0) continue;
      best = std::min(best, (off - nrm.dot(w0)) / g);
    }
    return best;
  }

 private:
  std::vector<std::pair<RealVector, double>> halfspaces() const {
    std::vector<std::pair<RealVector, double>> hs;
    if (base_.is_box()) {
      const auto& bx = base_.as_box();
      for (Eigen::Index j = 0; j < p_.size(); ++j) {
        hs.emplace_back(RealVector::Unit(p_.size(), j), bx.hi[j]);
        hs.emplace_back(-RealVector::Unit(p_.size(), j), -bx.lo[j]);
      }
    } else {
      for (const auto& f : base_.as_polytope().facets) hs.emplace_back(f.normal, f.offset);
    }
    return hs;
  }

  const ConvexBase& base_;
  RealVector p_, A_, B_;
};

inline bool rank_one(const RealVector& A, const RealVector& B) {
  const double na = A.norm(), nb = B.norm();
  if (na == 0 || nb == 0) return true;
  const double c = A.dot(B) / (na * nb);
  return 1.0 - std::abs(c) < 1e-14;
}

// Upper bound from the slice through u and v: exact strip when the slice is a strip, else the best
// inscribed disc containing 0 and 1, else the length of [0, 1] under the inscribed-disc metric bound.
inline double slice_upper(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v) {
  const ComplexPoint e = v - u;
  const RealVector A = e.re(), B = e.im();
  if (rank_one(A, B)) {
    const RealVector ehat = (A.norm() >= B.norm() ? A : B).normalized();
    const Complex kappa(ehat.dot(A), ehat.dot(B));
    const auto [s1, s2] = chord(base, u.re(), ehat);
    return StripModel{s1, s2}.distance(0.0, kappa);
  }
  // Two legs with rank-one slices: shift Im first, then Re, and the other order.
  double legs = std::numeric_limits<double>::infinity();
  {
    const ComplexPoint m1 = ComplexPoint::from_parts(u.re(), v.im());
    const ComplexPoint m2 = ComplexPoint::from_parts(v.re(), u.im());
    legs = std::min(slice_upper(base, u, m1) + slice_upper(base, m1, v), slice_upper(base, u, m2) + slice_upper(base, m2, v));
  }
  Slice sl(base, u, e);
  auto objective = [&](Complex a) {
    const double rho = sl.inradius(a);
    const double ra = std::abs(a), rb = std::abs(1.0 - a);
    if (!(rho > ra && rho > rb)) return std::numeric_limits<double>::infinity();
    return disc_distance(-a / rho, (1.0 - a) / rho);
  };
  Complex best_a(0.5, 0.0);
  double best = objective(best_a);
  for (double ex : {0.0, -0.5, 0.5})
    for (double ey : {-1.0, -0.5, 0.5, 1.0}) {
      const Complex a(0.5 + ex, ey);
      const double val = objective(a);
      if (val < best) best = val, best_a = a;
    }
  if (std::isfinite(best)) {
    double h = 0.5;
    for (int round = 0; round < 6; ++round) {
      auto fx = [&](double t) { return objective(Complex(t, best_a.imag())); };
      auto rx = golden_min(fx, best_a.real() - h, best_a.real() + h, 1e-9);
      if (rx.second < best) best = rx.second, best_a = Complex(rx.first, best_a.imag());
      auto fy = [&](double t) { return objective(Complex(best_a.real(), t)); };
      auto ry = golden_min(fy, best_a.imag() - h, best_a.imag() + h, 1e-9);
      if (ry.second < best) best = ry.second, best_a = Complex(best_a.real(), ry.first);
      h *= 0.5;
    }
  }
  // Path-length bound along the segment; always available.
  auto k = [&](double t) { return 1.0 / sl.inradius(Complex(t, 0.0)); };
  double path = std::numeric_limits<double>::infinity();
  try {
    path = adaptive_simpson(k, 0.0, 1.0, SimpsonOptions{1e-10, 30, 16}) + 1e-9;
  } catch (const Error&) {
  }
  return std::min({best, path, legs});
}

inline double slice_metric_upper(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v) {
  const RealVector A = v.re(), B = v.im();
  if (rank_one(A, B)) {
    const RealVector ehat = (A.norm() >= B.norm() ? A : B).normalized();
    const Complex kappa(ehat.dot(A), ehat.dot(B));
    const auto [s1, s2] = chord(base, u.re(), ehat);
    return StripModel{s1, s2}.metric(0.0, kappa);
  }
  Slice sl(base, u, v);
  auto objective = [&](Complex a) {
    const double rho = sl.inradius(a);
    if (!(rho > std::abs(a))) return std::numeric_limits<double>::infinity();
    return rho / ((rho - std::abs(a)) * (rho + std::abs(a)));
  };
  Complex best_a(0.0, 0.0);
  double best = objective(best_a);
  double h = 0.5 * sl.inradius(0.0);
  for (int round = 0; round < 8; ++round) {
    auto fx = [&](double t) { return objective(Complex(t, best_a.imag())); };
    auto rx = golden_min(fx, best_a.real() - h, best_a.real() + h, 1e-10);
    if (rx.second < best) best = rx.second, best_a = Complex(rx.first, best_a.imag());
    auto fy = [&](double t) { return objective(Complex(best_a.real(), t)); };
    auto ry = golden_min(fy, best_a.imag() - h, best_a.imag() + h, 1e-10);
    if (ry.second < best) best = ry.second, best_a = Complex(best_a.real(), ry.first);
    h *= 0.5;
  }
  return best;
}

inline ComplexPoint frame_apply(const BoxFrame& f, const ComplexPoint& z) {
  return ComplexPoint(ComplexVector(f.L.cast<Complex>() * z.vec()));
}

inline double box_frame_distance(const BoxFrame& f, const ComplexPoint& u, const ComplexPoint& v) {
  const ComplexPoint a = frame_apply(f, u), b = frame_apply(f, v);
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) best = std::max(best, StripModel{f.lo[j], f.hi[j]}.distance(a[j], b[j]));
  return best;
}

inline double box_frame_metric(const BoxFrame& f, const ComplexPoint& u, const ComplexPoint& v) {
  const ComplexPoint a = frame_apply(f, u), b = frame_apply(f, v);
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) best = std::max(best, StripModel{f.lo[j], f.hi[j]}.metric(a[j], b[j]));
  return best;
}

// Ball base: reduce to the unit ball in span{x, y, s} and run the extremal solver.
inline void refine_ball(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v, Bracket& br) {
  const auto& ball = base.as_ball();
  const RealVector x = (u.re() - ball.center) / ball.radius;
  const RealVector y = (v.re() - ball.center) / ball.radius;
  const RealVector s = (v.im() - u.im()) / ball.radius;
  // Orthonormal basis of span{x, y, s}.
  std::vector<RealVector> basis;
  for (const RealVector* w : {&x, &y, &s}) {
    RealVector r = *w;
    for (const auto& q : basis) r -= q.dot(r) * q;
    if (r.norm() > 1e-13 * std::max(1.0, w->norm())) basis.push_back(r.normalized());
  }
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  if (m <= 1) return;  // collinear with the center: slab and chord already agree
  Eigen::MatrixXd Qm(x.size(), m);
  for (Eigen::Index j = 0; j < m; ++j) Qm.col(j) = basis[static_cast<std::size_t>(j)];
  const Eigen::VectorXd xr = Qm.transpose() * x, yr = Qm.transpose() * y, sr = Qm.transpose() * s;
  const ConvexBase unit = ConvexBase::unit_ball(static_cast<int>(m));
  const ComplexPoint ur = ComplexPoint::real(xr), vr = ComplexPoint::from_parts(yr, sr);
  auto slab = [&](const RealVector& d) { return slab_distance(unit, d, ur, vr); };
  const auto [low, dir] = maximise_over_directions(m, 64, {yr - xr, sr}, slab);
  if (br.lower > 6.0) return;  // kernels too peaked for the quadrature budget
  BallTubeExtremal solver(xr, yr, sr);
  auto sol = solver.solve(dir, std::max(low, 1e-6), br.upper);
  if (!sol) return;
  const double dist = std::min(1.0 - xr.norm(), 1.0 - yr.norm());
  const double margin = 10.0 * sol->residual / std::max(dist, 1e-6) + 1e-12;
  br.upper = std::min(br.upper, sol->K + margin);
  br.lower = std::max(br.lower, sol->lower);
  if (br.lower > br.upper) br.lower = br.upper;
}

}  // namespace detail

// Sup over supporting slabs of the projected strip distance.
inline double caratheodory_lower(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v,
                                 const TubeOptions& opt = {}) {
  require(u.size() == base.dim() && v.size() == base.dim(), ErrorCode::DimensionMismatch, "tube point dimension");
  if (u == v) return 0.0;
  auto f = [&](const RealVector& d) { return detail::slab_distance(base, d, u, v); };
  return detail::maximise_over_directions(base.dim(), opt.direction_factor, detail::extra_directions(base, u, v), f).first;
}

// Best analytic-disc competitor: box frame product, slice discs, and for ball bases the extremal solve.
inline double lempert_upper(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v,
                            const TubeOptions& opt = {}) {
  require(u.size() == base.dim() && v.size() == base.dim(), ErrorCode::DimensionMismatch, "tube point dimension");
  if (u == v) return 0.0;
  if (auto f = base.box_frame()) return detail::box_frame_distance(*f, u, v);
  double up = detail::slice_upper(base, u, v);
  require(std::isfinite(up), ErrorCode::Degenerate, "no admissible disc found");
  if (base.is_ball() && opt.refine) {
    Bracket br{caratheodory_lower(base, u, v, opt), up};
    if (br.gap() > opt.refine_threshold) detail::refine_ball(base, u, v, br);
    up = br.upper;
  }
  return up;
}

// Two-sided bracket of the tube distance. When the lower bound already reaches prune_above the upper bound is
// left at infinity (callers searching for a minimum can discard the pair).
inline Bracket tube_bracket(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v,
                            const TubeOptions& opt = {},
                            double prune_above = std::numeric_limits<double>::infinity()) {
  require(u.size() == base.dim() && v.size() == base.dim(), ErrorCode::DimensionMismatch, "tube point dimension");
  if (u == v) return {0.0, 0.0};
  if (auto f = base.box_frame()) {
    const double d = detail::box_frame_distance(*f, u, v);
    return {d, d};
  }
  const double lower = caratheodory_lower(base, u, v, opt);
  if (lower >= prune_above) return {lower, std::numeric_limits<double>::infinity()};
  Bracket br{lower, detail::slice_upper(base, u, v)};
  if (br.lower > br.upper) br.lower = br.upper;  // rounding only; both bound the same number
  if (base.is_ball() && opt.refine && br.gap() > opt.refine_threshold) detail::refine_ball(base, u, v, br);
  return br;
}

inline Bracket tube_metric_bracket(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v,
                                   const TubeOptions& opt = {}) {
  if (v.vec().squaredNorm() == 0) return {0.0, 0.0};
  if (auto f = base.box_frame()) {
    const double k = detail::box_frame_metric(*f, u, v);
    return {k, k};
  }
  auto g = [&](const RealVector& d) { return detail::slab_metric(base, d, u, v); };
  const double lo =
      detail::maximise_over_directions(base.dim(), opt.direction_factor, detail::extra_directions(base, u, v + u), g).first;
  const double hi = detail::slice_metric_upper(base, u, v);
  return {std::min(lo, hi), hi};
}

// Cheap certified lower bound for deck shells: coordinate slabs only.
inline double tube_coordinate_lower(const ConvexBase& base, const ComplexPoint& u, const ComplexPoint& v) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < base.dim(); ++j)
    best = std::max(best, detail::slab_distance(base, RealVector::Unit(base.dim(), j), u, v));
  return best;
}

}  // namespace kobalab
