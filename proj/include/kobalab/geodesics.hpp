#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convex_base.hpp"
#include "domain.hpp"
#include "maps.hpp"
#include "metric.hpp"
#include "mobius.hpp"
#include "numerics.hpp"

namespace kobalab {

enum class IntervalKind { Segment, Ray, Line };
enum class Parametrization { ArcLength, Affine };

inline const char* to_string(IntervalKind k) {
  switch (k) {
    case IntervalKind::Segment: return "segment";
    case IntervalKind::Ray: return "ray";
    case IntervalKind::Line: return "line";
  }
  return "?";
}

inline const char* to_string(Parametrization p) { return p == Parametrization::ArcLength ? "arc-length" : "affine"; }

// Segment: [a, b]. Ray: [a, inf). Line: (a, b), ends possibly infinite.
struct Interval {
  IntervalKind kind = IntervalKind::Line;
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();

  static Interval segment(double a, double b) { return {IntervalKind::Segment, a, b}; }
  static Interval ray(double a = 0.0) { return {IntervalKind::Ray, a, std::numeric_limits<double>::infinity()}; }
  static Interval line(double a = -std::numeric_limits<double>::infinity(),
                       double b = std::numeric_limits<double>::infinity()) {
    return {IntervalKind::Line, a, b};
  }

  bool contains(double t) const {
    if (kind == IntervalKind::Segment) return t >= a && t <= b;
    if (kind == IntervalKind::Ray) return t >= a;
    return t > a && t < b;
  }
};

struct GeodesicCurve {
  ModelDomain domain;
  Interval interval;
  Parametrization parametrization = Parametrization::Affine;
  CurveSampler sample;
  CurveSampler derivative;  // empty: central differences
  std::string id;

  ComplexPoint operator()(double t) const { return sample(t); }
};

// Evenly spread parameters: closed segments include their ends; rays use [a, a + horizon]; open lines use cell
// midpoints (finite ends) or [-horizon/2, horizon/2].
inline std::vector<double> sample_parameters(const Interval& I, int count, double horizon) {
  require(count >= 1, ErrorCode::InvalidArgument, "need at least one sample");
  std::vector<double> out;
  const double inf = std::numeric_limits<double>::infinity();
  auto linspace = [&](double lo, double hi, bool open) {
    for (int k = 0; k < count; ++k) {
      const double f = open ? (k + 0.5) / count : (count == 1 ? 0.0 : static_cast<double>(k) / (count - 1));
      out.push_back(lo + (hi - lo) * f);
    }
  };
  if (I.kind == IntervalKind::Segment) linspace(I.a, I.b, false);
  else if (I.kind == IntervalKind::Ray) linspace(I.a, I.a + horizon, false);
  else {
    const double lo = I.a == -inf ? (I.b == inf ? -0.5 * horizon : I.b - horizon) : I.a;
    const double hi = I.b == inf ? (I.a == -inf ? 0.5 * horizon : I.a + horizon) : I.b;
    const bool open_lo = I.a != -inf, open_hi = I.b != inf;
    if (open_lo || open_hi) linspace(lo, hi, true);
    else linspace(lo, hi, false);
  }
  return out;
}

// --- constructors ---------------------------------------------------------------------------------------------------

namespace detail {

inline ModelDomain ball_like(Eigen::Index N) {
  return N == 1 ? ModelDomain::unit_disc() : ModelDomain::unit_ball(static_cast<int>(N));
}

inline void check_ball_point(Eigen::Index N, const ComplexPoint& z, const char* who) {
  require(N >= 1, ErrorCode::InvalidArgument, "N >= 1");
  check_point(z, who);
  check_same_dim(z, N, who);
  require(norm_sq(z) < 1.0, ErrorCode::NotInterior, std::string(who) + " is not in the unit ball");
}

inline ComplexPoint boundary_target(Eigen::Index N, const BoundaryPoint& p) {
  check_same_dim(p.point(), N, "p");
  require(p.domain().is<UnitBall>() || p.domain().is<UnitDisc>(), ErrorCode::InvalidArgument,
          "landing point must lie on the unit sphere");
  return p.point();
}

}  // namespace detail

// Radial geodesic t -> tanh(t) u moved by the involution exchanging 0 and z.
inline GeodesicCurve ball_geodesic_segment(Eigen::Index N, const ComplexPoint& z, const ComplexPoint& w) {
  detail::check_ball_point(N, z, "z");
  detail::check_ball_point(N, w, "w");
  const ModelDomain d = detail::ball_like(N);
  if (z == w) {
    return {d, Interval::segment(0.0, 0.0), Parametrization::ArcLength, [z](double) { return z; },
            [N](double) { return ComplexPoint(N); }, "ball-segment"};
  }
  const ComplexPoint wp = ball_involution(z, w);
  const ComplexPoint u = (1.0 / norm(wp)) * wp;
  const double T = ball_distance(z, w);
  return {d, Interval::segment(0.0, T), Parametrization::ArcLength,
          [z, u](double t) { return ball_involution(z, std::tanh(t) * u); }, nullptr, "ball-segment"};
}

inline GeodesicCurve ball_landing_ray(Eigen::Index N, const ComplexPoint& z, const BoundaryPoint& p) {
  detail::check_ball_point(N, z, "z");
  const ComplexPoint target = detail::boundary_target(N, p);
  ComplexPoint u = ball_involution(z, target);
  u = (1.0 / norm(u)) * u;
  return {detail::ball_like(N), Interval::ray(0.0), Parametrization::ArcLength,
          [z, u](double t) { return ball_involution(z, std::tanh(t) * u); }, nullptr, "ball-ray"};
}

// The complex geodesic through z whose closure reaches p: zeta -> phi_z(zeta u), phi_z(u) = p.
struct ComplexGeodesic {
  ComplexPoint center;
  ComplexPoint direction;
  ComplexPoint operator()(Complex zeta) const { return ball_involution(center, zeta * direction); }
};

inline ComplexGeodesic ball_complex_geodesic(Eigen::Index N, const ComplexPoint& z, const BoundaryPoint& p) {
  detail::check_ball_point(N, z, "z");
  const ComplexPoint target = detail::boundary_target(N, p);
  require(!(z == target), ErrorCode::InvalidArgument, "z equals p");
  ComplexPoint u = ball_involution(z, target);
  return {z, (1.0 / norm(u)) * u};
}

// s -> t0 + i s in H_R. Affine; a geodesic only on the midline t0 = 0.
inline GeodesicCurve strip_vertical_geodesic(double R, double t0) {
  const ModelDomain d = ModelDomain::strip(R);
  require(std::abs(t0) < std::log(R), ErrorCode::InvalidArgument, "t0 must satisfy |t0| < log R");
  return {d, Interval::line(), Parametrization::Affine, [t0](double s) { return ComplexPoint{Complex(t0, s)}; },
          [](double) { return ComplexPoint{Complex(0.0, 1.0)}; }, "strip-vertical"};
}

// t -> t + i s0 across H_R. The arc-length form is t = L (4/pi) arctan(tanh sigma), L = log R.
inline GeodesicCurve strip_horizontal_geodesic(double R, double s0, bool arc_length = false) {
  const ModelDomain d = ModelDomain::strip(R);
  require(std::isfinite(s0), ErrorCode::InvalidArgument, "s0 must be finite");
  const double L = std::log(R);
  if (!arc_length)
    return {d, Interval::line(-L, L), Parametrization::Affine, [s0](double t) { return ComplexPoint{Complex(t, s0)}; },
            [](double) { return ComplexPoint{Complex(1.0)}; }, "strip-horizontal"};
  const double c = 4.0 * L / kPi;
  return {d, Interval::line(), Parametrization::ArcLength,
          [c, s0](double s) { return ComplexPoint{Complex(c * std::atan(std::tanh(s)), s0)}; },
          [c](double s) {
            const double th = std::tanh(s);
            return ComplexPoint{Complex(c * (1.0 - th * th) / (1.0 + th * th))};
          },
          "strip-horizontal"};
}

// t -> t omega on the punctured disc, t in (0, 1). Arc length: t = exp(-exp(-2 sigma)).
inline GeodesicCurve punctured_disc_radial_geodesic(Complex omega, bool arc_length = false) {
  require(std::abs(std::abs(omega) - 1.0) < 1e-12, ErrorCode::InvalidArgument, "omega must be unimodular");
  const ModelDomain d = ModelDomain::punctured_disc();
  if (!arc_length)
    return {d, Interval::line(0.0, 1.0), Parametrization::Affine, [omega](double t) { return ComplexPoint{t * omega}; },
            [omega](double) { return ComplexPoint{omega}; }, "radial"};
  return {d, Interval::line(), Parametrization::ArcLength,
          [omega](double s) { return ComplexPoint{std::exp(-std::exp(-2.0 * s)) * omega}; },
          [omega](double s) {
            const double e = std::exp(-2.0 * s);
            return ComplexPoint{2.0 * e * std::exp(-e) * omega};
          },
          "radial"};
}

// exp of the horizontal strip geodesic: the radial line R^{t/L} omega of A_R.
inline GeodesicCurve annulus_radial_geodesic(double R, double s0, bool arc_length = false) {
  const GeodesicCurve h = strip_horizontal_geodesic(R, s0, arc_length);
  auto f = h.sample;
  auto df = h.derivative;
  return {ModelDomain::annulus(R), h.interval, h.parametrization,
          [f](double t) { return ComplexPoint{std::exp(f(t)[0])}; },
          [f, df](double t) { return ComplexPoint{std::exp(f(t)[0]) * df(t)[0]}; }, "annulus-radial"};
}

// exp((x + y)/2) exp(t (x - y)/2), t in (-1, 1), with an optional torus phase. Arc length: t = (4/pi) arctan(tanh s).
inline GeodesicCurve antipodal_geodesic(const ConvexBase& base, const AntipodalPair& pair,
                                        std::optional<RealVector> phase = std::nullopt, bool arc_length = false) {
  require(pair.base() == base, ErrorCode::InvalidArgument, "pair belongs to another base");
  const Eigen::Index n = base.dim();
  const RealVector mid = 0.5 * (pair.x() + pair.y()), half = 0.5 * (pair.x() - pair.y());
  const RealVector th = phase ? *phase : RealVector::Zero(n);
  require(th.size() == n, ErrorCode::DimensionMismatch, "phase dimension");
  auto at = [mid, half, th](double t) {
    ComplexPoint z(mid.size());
    for (Eigen::Index j = 0; j < mid.size(); ++j) z[j] = std::polar(std::exp(mid[j] + t * half[j]), th[j]);
    return z;
  };
  auto dat = [at, half](double t) {
    ComplexPoint z = at(t);
    for (Eigen::Index j = 0; j < z.size(); ++j) z[j] *= half[j];
    return z;
  };
  const ModelDomain d = ModelDomain::reinhardt(base);
  if (!arc_length) return {d, Interval::line(-1.0, 1.0), Parametrization::Affine, at, dat, "antipodal"};
  return {d, Interval::line(), Parametrization::ArcLength,
          [at](double s) { return at(4.0 / kPi * std::atan(std::tanh(s))); },
          [dat](double s) {
            const double th2 = std::tanh(s);
            const double dt = 4.0 / kPi * (1.0 - th2 * th2) / (1.0 + th2 * th2);
            return dt * dat(4.0 / kPi * std::atan(th2));
          },
          "antipodal"};
}

// Same curve, restricted to [start, inf).
inline GeodesicCurve restrict_to_ray(GeodesicCurve c, double start = 0.0) {
  require(c.interval.contains(start) && c.interval.b == std::numeric_limits<double>::infinity(),
          ErrorCode::InvalidArgument, "curve does not continue to +infinity from start");
  c.interval = Interval::ray(start);
  return c;
}

// --- lifting ----------------------------------------------------------------------------------------------------------

namespace detail {

inline double anchor_parameter(const Interval& I) {
  if (I.kind != IntervalKind::Line) return I.a;
  if (I.contains(0.0)) return 0.0;
  return 0.5 * (I.a + I.b);
}

// Continuous arguments of each coordinate of curve along [t0, t], starting from theta0.
inline RealVector track_arguments(const CurveSampler& curve, double t0, double t, RealVector theta) {
  if (t == t0) return theta;
  ComplexPoint prev = curve(t0);
  double s = t0, h = (t - t0) / 64.0;
  while ((t - s) * (h > 0 ? 1.0 : -1.0) > 0) {
    if (std::abs(h) > std::abs(t - s)) h = t - s;
    const ComplexPoint next = curve(s + h);
    bool ok = true;
    RealVector delta(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      require(next[j] != Complex(0.0), ErrorCode::NotLiftable, "curve hits a zero coordinate");
      delta[j] = std::arg(next[j] / prev[j]);
      if (std::abs(delta[j]) > 0.5 * kPi) ok = false;
    }
    if (!ok) {
      h *= 0.5;
      require(std::abs(h) > 1e-12, ErrorCode::NotLiftable, "argument jump not resolved at the minimum step");
      continue;
    }
    theta += delta;
    prev = next;
    s += h;
  }
  return theta;
}

}  // namespace detail

// Lift through exp or a power map, fixed by the preimage at the anchor parameter.
inline GeodesicCurve lift_geodesic(const HolomorphicMap& F, const GeodesicCurve& curve, const ComplexPoint& base_preimage) {
  require(F.is<ExpCover>() || F.is<PowerMap>(), ErrorCode::Unsupported, "lifting needs exp or a power covering");
  require(curve.domain == F.target(), ErrorCode::InvalidArgument, "curve does not live in the covering target");
  require_interior(F.source(), base_preimage, "base_preimage");
  const double t0 = detail::anchor_parameter(curve.interval);
  const ComplexPoint c0 = curve(t0);
  require(max_abs(F.eval(base_preimage), c0) <= 1e-10 * (1.0 + norm(c0)), ErrorCode::InvalidArgument,
          "base_preimage does not map to the anchor point");
  const Eigen::Index n = c0.size();
  RealVector theta0(n);
  const int power = F.is<PowerMap>() ? F.as<PowerMap>().n : 1;
  for (Eigen::Index j = 0; j < n; ++j)
    theta0[j] = F.is<ExpCover>() ? base_preimage[j].imag() : power * std::arg(base_preimage[j]);
  auto sample = [F, f = curve.sample, t0, theta0, power](double t) {
    const RealVector th = detail::track_arguments(f, t0, t, theta0);
    const ComplexPoint w = f(t);
    ComplexPoint z(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      if (F.is<ExpCover>()) z[j] = Complex(std::log(std::abs(w[j])), th[j]);
      else z[j] = std::polar(std::pow(std::abs(w[j]), 1.0 / power), th[j] / power);
    }
    return z;
  };
  return {F.source(), curve.interval, curve.parametrization, sample, nullptr, curve.id + "-lift"};
}

// --- landing and shadowing --------------------------------------------------------------------------------------------

struct LandingResult {
  ComplexPoint point;      // sample(horizon) projected to the boundary
  double residual = 0.0;   // |sample(horizon) - sample(horizon / 2)|
  bool converged = false;  // residual <= 1e-4
};

inline constexpr double kLandingResidual = 1e-4;

inline LandingResult landing_point(const GeodesicCurve& ray, double horizon = 20.0) {
  require(ray.interval.kind == IntervalKind::Ray, ErrorCode::InvalidArgument, "landing needs a ray");
  require(ray.domain.bounded(), ErrorCode::Unsupported, "landing is only defined for bounded kinds");
  require(horizon > 0.0, ErrorCode::InvalidArgument, "horizon must be positive");
  const double t1 = ray.interval.a + horizon, th = ray.interval.a + 0.5 * horizon;
  const ComplexPoint p = ray(t1);
  LandingResult r{project_to_boundary(ray.domain, p), euclid(p, ray(th)), false};
  r.converged = r.residual <= kLandingResidual;
  return r;
}

struct ShadowingReport {
  double bound = 0.0;
  bool tail_nonincreasing = true;
  std::vector<std::pair<double, double>> profile;  // (t, K(gamma(t), eta(t)))
};

inline ShadowingReport shadowing_bound(const ModelDomain& d, const GeodesicCurve& gamma, const GeodesicCurve& eta,
                                       double horizon = 8.0, int samples = 160, const MetricOptions& opt = {}) {
  const LandingResult lg = landing_point(gamma, 2.0 * horizon), le = landing_point(eta, 2.0 * horizon);
  require(euclid(lg.point, le.point) <= kLandingResidual, ErrorCode::InvalidArgument, "rays land at distinct points");
  ShadowingReport r;
  for (int k = 0; k <= samples; ++k) {
    const double t = horizon * k / samples;
    const double v = distance(d, gamma(gamma.interval.a + t), eta(eta.interval.a + t), opt).upper();
    r.profile.emplace_back(t, v);
    r.bound = std::max(r.bound, v);
  }
  for (std::size_t k = r.profile.size() / 2 + 1; k < r.profile.size(); ++k)
    if (r.profile[k].second > r.profile[k - 1].second + 1e-9) r.tail_nonincreasing = false;
  return r;
}

// --- arc-length conversion ----------------------------------------------------------------------------------------

// Reparametrize by signed length from the anchor parameter, inverting the cumulative length by bisection.
inline GeodesicCurve to_arc_length(const GeodesicCurve& c, const MetricOptions& opt = {}) {
  if (c.parametrization == Parametrization::ArcLength) return c;
  const double t0 = detail::anchor_parameter(c.interval);
  const ModelDomain d = c.domain;
  const CurveSampler f = c.sample, df = c.derivative;
  const Interval I = c.interval;
  auto length = [d, f, df, t0, opt](double t) {
    if (t >= t0) return hyperbolic_length(d, f, t0, t, df, opt).value;
    return -hyperbolic_length(d, f, t, t0, df, opt).value;
  };
  auto param = [length, t0, I](double sigma) {
    if (sigma == 0.0) return t0;
    require(sigma > 0.0 || I.kind == IntervalKind::Line, ErrorCode::InvalidArgument, "negative arc length");
    const double dir = sigma > 0 ? 1.0 : -1.0;
    const double end = sigma > 0 ? I.b : I.a;
    // Bracket: walk towards the end (halving the remaining gap when the end is finite).
    double lo = t0, hi = t0;
    for (int k = 0; k < 200; ++k) {
      hi = std::isfinite(end) ? end - (end - t0) * std::ldexp(1.0, -(k + 1)) : t0 + dir * std::ldexp(1.0, k - 4);
      if (I.kind == IntervalKind::Segment && k == 0) hi = end;
      if (dir * length(hi) >= dir * sigma) break;
      lo = hi;
      require(k < 199 && !(I.kind == IntervalKind::Segment), ErrorCode::InvalidArgument,
              "arc length beyond the end of the curve");
    }
    auto g = [&](double t) { return dir * (length(t) - sigma); };
    return bisect(g, std::min(lo, hi), std::max(lo, hi), 1e-10);
  };
  Interval J = Interval::line();
  if (I.kind == IntervalKind::Segment) J = Interval::segment(0.0, length(I.b));
  else if (I.kind == IntervalKind::Ray) J = Interval::ray(0.0);
  return {d, J, Parametrization::ArcLength, [f, param](double s) { return f(param(s)); }, nullptr, c.id + "-arc"};
}

// --- families -----------------------------------------------------------------------------------------------------

struct NoAnchor {};
struct InteriorAnchor {
  ComplexPoint p;
};
struct LandingAnchor {
  BoundaryPoint p;
};
using FamilyAnchor = std::variant<NoAnchor, InteriorAnchor, LandingAnchor>;

struct GeodesicFamily {
  std::string name;
  ModelDomain domain;
  std::vector<GeodesicCurve> members;
  // Generator: a member passing through z (the family may be larger than the listed members).
  std::function<std::optional<GeodesicCurve>(const ComplexPoint&)> through;
  FamilyAnchor anchor;
};

// Rays t -> t omega in the punctured disc; all land at the puncture.
inline GeodesicFamily radial_family(int count, bool arc_length = false) {
  require(count >= 1, ErrorCode::InvalidArgument, "family needs members");
  GeodesicFamily f{"radial", ModelDomain::punctured_disc(), {}, nullptr,
                   LandingAnchor{BoundaryPoint::make(ModelDomain::punctured_disc(), ComplexPoint{0.0})}};
  for (int k = 0; k < count; ++k) {
    f.members.push_back(punctured_disc_radial_geodesic(std::polar(1.0, 2.0 * kPi * k / count), arc_length));
    f.members.back().id = "radial-" + std::to_string(k);
  }
  f.through = [arc_length](const ComplexPoint& z) -> std::optional<GeodesicCurve> {
    if (z[0] == Complex(0.0)) return std::nullopt;
    return punctured_disc_radial_geodesic(z[0] / std::abs(z[0]), arc_length);
  };
  return f;
}

// Crossing lines t -> t + i s0 of H_R, s0 spread over [-pi, pi).
inline GeodesicFamily horizontal_family(double R, int count, bool arc_length = false) {
  require(count >= 1, ErrorCode::InvalidArgument, "family needs members");
  GeodesicFamily f{"horizontal", ModelDomain::strip(R), {}, nullptr, NoAnchor{}};
  for (int k = 0; k < count; ++k) {
    f.members.push_back(strip_horizontal_geodesic(R, -kPi + 2.0 * kPi * k / count, arc_length));
    f.members.back().id = "horizontal-" + std::to_string(k);
  }
  f.through = [R, arc_length](const ComplexPoint& z) -> std::optional<GeodesicCurve> {
    return strip_horizontal_geodesic(R, z[0].imag(), arc_length);
  };
  return f;
}

// Vertical lines s -> t0 + i s of H_R (geodesic only for t0 = 0).
inline GeodesicFamily vertical_family(double R, int count) {
  require(count >= 1, ErrorCode::InvalidArgument, "family needs members");
  const double L = std::log(R);
  GeodesicFamily f{"vertical", ModelDomain::strip(R), {}, nullptr, NoAnchor{}};
  for (int k = 0; k < count; ++k) {
    f.members.push_back(strip_vertical_geodesic(R, -L + 2.0 * L * (k + 0.5) / count));
    f.members.back().id = "vertical-" + std::to_string(k);
  }
  f.through = [R](const ComplexPoint& z) -> std::optional<GeodesicCurve> {
    return strip_vertical_geodesic(R, z[0].real());
  };
  return f;
}

// Rays of the ball landing at p, started from quasi-random points of radius < 0.8.
inline GeodesicFamily ball_landing_family(Eigen::Index N, const ComplexPoint& p, int count) {
  require(count >= 1, ErrorCode::InvalidArgument, "family needs members");
  const ModelDomain d = detail::ball_like(N);
  const BoundaryPoint bp = BoundaryPoint::make(d, p, 1e-12);
  GeodesicFamily f{"ball-landing", d, {}, nullptr, LandingAnchor{bp}};
  std::uint64_t k = 1;
  while (static_cast<int>(f.members.size()) < count) {
    const auto h = halton(k++, static_cast<int>(2 * N));
    ComplexPoint z(N);
    for (Eigen::Index j = 0; j < N; ++j)
      z[j] = Complex(1.6 * h[static_cast<std::size_t>(2 * j)] - 0.8, 1.6 * h[static_cast<std::size_t>(2 * j + 1)] - 0.8);
    if (norm(z) >= 0.8) continue;
    f.members.push_back(ball_landing_ray(N, z, bp));
    f.members.back().id = "ray-" + std::to_string(f.members.size() - 1);
  }
  f.through = [N, bp](const ComplexPoint& z) -> std::optional<GeodesicCurve> { return ball_landing_ray(N, z, bp); };
  return f;
}

// Antipodal geodesics exp(t x) over diameters of the unit ball of R^n, with torus rotations for completeness.
inline GeodesicFamily antipodal_ball_family(Eigen::Index n, int count, bool arc_length = false) {
  require(count >= 1 && n >= 1, ErrorCode::InvalidArgument, "family needs members");
  const ConvexBase base = ConvexBase::unit_ball(static_cast<int>(n));
  ComplexPoint ones(n);
  for (Eigen::Index j = 0; j < n; ++j) ones[j] = 1.0;
  GeodesicFamily f{"antipodal", ModelDomain::reinhardt(base), {}, nullptr, InteriorAnchor{ones}};
  for (int k = 0; k < count; ++k) {
    RealVector x(n);
    if (n == 1) x[0] = 1.0;
    else if (n == 2) x = real_vector({std::cos(kPi * k / count), std::sin(kPi * k / count)});
    else {
      const auto dirs = detail::direction_sample(n, count);
      x = dirs[static_cast<std::size_t>(k)];
    }
    f.members.push_back(antipodal_geodesic(base, AntipodalPair::make(base, x, -x), std::nullopt, arc_length));
    f.members.back().id = "antipodal-" + std::to_string(k);
  }
  f.through = [base, n, arc_length](const ComplexPoint& z) -> std::optional<GeodesicCurve> {
    for (Eigen::Index j = 0; j < n; ++j)
      if (z[j] == Complex(0.0)) return std::nullopt;
    const RealVector m = log_coordinates(z);
    RealVector x = m.norm() > 0 ? RealVector(m.normalized()) : RealVector(RealVector::Unit(n, 0));
    RealVector th(n);
    for (Eigen::Index j = 0; j < n; ++j) th[j] = std::arg(z[j]);
    return antipodal_geodesic(base, AntipodalPair::make(base, x, -x), th, arc_length);
  };
  return f;
}

}  // namespace kobalab
