#pragma once
#include <cmath>
#include <string>
#include <variant>

#include "convex_base.hpp"
#include "ellipsoid.hpp"
#include "mobius.hpp"
#include "planar.hpp"
#include "point.hpp"

namespace kobalab {

struct UnitDisc {};
struct PuncturedDisc {};
struct Annulus {
  double R;
};
// H_R = {|Re| < log R}
struct Strip {
  double R;
};
// {Re < 0}; exp maps it onto the punctured disc.
struct LeftHalfPlane {};
struct UnitBall {
  int N;
};
struct Polydisc {
  int N;
};
struct TubeOverBase {
  ConvexBase base;
};
struct ReinhardtLog {
  ConvexBase base;
};
// Omega_t = A_t^{-1}(Omega_0). r_in is derived at construction.
struct ScaledEllipsoid {
  int N;
  double eps;
  double t;
  double r_in;
};

class ModelDomain {
 public:
  using Kind = std::variant<UnitDisc, PuncturedDisc, Annulus, Strip, LeftHalfPlane, UnitBall, Polydisc, TubeOverBase,
                            ReinhardtLog, ScaledEllipsoid>;

  static ModelDomain unit_disc() { return ModelDomain(UnitDisc{}); }
  static ModelDomain punctured_disc() { return ModelDomain(PuncturedDisc{}); }
  static ModelDomain annulus(double R) {
    require(std::isfinite(R) && R > 1.0, ErrorCode::InvalidArgument, "annulus needs R > 1");
    return ModelDomain(Annulus{R});
  }
  static ModelDomain strip(double R) {
    require(std::isfinite(R) && R > 1.0, ErrorCode::InvalidArgument, "strip needs R > 1");
    return ModelDomain(Strip{R});
  }
  static ModelDomain left_half_plane() { return ModelDomain(LeftHalfPlane{}); }
  static ModelDomain unit_ball(int N) {
    require(N >= 1, ErrorCode::InvalidArgument, "ball needs N >= 1");
    return ModelDomain(UnitBall{N});
  }
  static ModelDomain polydisc(int N) {
    require(N >= 1, ErrorCode::InvalidArgument, "polydisc needs N >= 1");
    return ModelDomain(Polydisc{N});
  }
  static ModelDomain tube(ConvexBase base) { return ModelDomain(TubeOverBase{std::move(base)}); }
  static ModelDomain reinhardt(ConvexBase base) { return ModelDomain(ReinhardtLog{std::move(base)}); }
  static ModelDomain scaled_ellipsoid(int N, double eps, double t) {
    require(N >= 1, ErrorCode::InvalidArgument, "ellipsoid needs N >= 1");
    require(std::isfinite(eps) && eps >= 0.0 && eps < 1.0, ErrorCode::InvalidArgument, "eps must lie in [0, 1)");
    ScalingParameter sp(t);
    return ModelDomain(ScaledEllipsoid{N, eps, sp.value(), ellipsoid_inscribed_radius(eps, t, N)});
  }

  const Kind& kind() const { return kind_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind_);
  }

  Eigen::Index dim() const {
    return std::visit(
        [](const auto& k) -> Eigen::Index {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, UnitBall> || std::is_same_v<T, Polydisc> ||
                        std::is_same_v<T, ScaledEllipsoid>)
            return k.N;
          else if constexpr (std::is_same_v<T, TubeOverBase> || std::is_same_v<T, ReinhardtLog>)
            return k.base.dim();
          else
            return 1;
        },
        kind_);
  }

  std::string name() const {
    static const char* names[] = {"unit-disc", "punctured-disc", "annulus",     "strip",        "left-half-plane",
                                  "unit-ball", "polydisc",       "tube",        "reinhardt-log", "scaled-ellipsoid"};
    return names[kind_.index()];
  }

  bool bounded() const { return !(is<Strip>() || is<LeftHalfPlane>() || is<TubeOverBase>()); }

 private:
  explicit ModelDomain(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

inline bool operator==(const ModelDomain& a, const ModelDomain& b) {
  if (a.kind().index() != b.kind().index()) return false;
  if (a.is<Annulus>()) return a.as<Annulus>().R == b.as<Annulus>().R;
  if (a.is<Strip>()) return a.as<Strip>().R == b.as<Strip>().R;
  if (a.is<UnitBall>()) return a.as<UnitBall>().N == b.as<UnitBall>().N;
  if (a.is<Polydisc>()) return a.as<Polydisc>().N == b.as<Polydisc>().N;
  if (a.is<TubeOverBase>()) return a.as<TubeOverBase>().base == b.as<TubeOverBase>().base;
  if (a.is<ReinhardtLog>()) return a.as<ReinhardtLog>().base == b.as<ReinhardtLog>().base;
  if (a.is<ScaledEllipsoid>()) {
    const auto &x = a.as<ScaledEllipsoid>(), &y = b.as<ScaledEllipsoid>();
    return x.N == y.N && x.eps == y.eps && x.t == y.t;
  }
  return true;
}

inline StripModel strip_model(const Strip& s) { return {-std::log(s.R), std::log(s.R)}; }

// (log|z_1|, ..., log|z_n|)
inline RealVector log_coordinates(const ComplexPoint& z) {
  check_point(z);
  RealVector out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    require(z[j] != Complex(0.0), ErrorCode::ZeroCoordinate, "log_coordinates needs nonzero coordinates");
    out[j] = std::log(std::abs(z[j]));
  }
  return out;
}

inline bool membership(const ModelDomain& d, const ComplexPoint& z) {
  check_point(z);
  check_same_dim(z, d.dim());
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        const Complex z0 = z[0];
        if constexpr (std::is_same_v<T, UnitDisc>) return std::abs(z0) < 1.0;
        else if constexpr (std::is_same_v<T, PuncturedDisc>) return std::abs(z0) < 1.0 && z0 != Complex(0.0);
        else if constexpr (std::is_same_v<T, Annulus>) return std::abs(z0) > 1.0 / k.R && std::abs(z0) < k.R;
        else if constexpr (std::is_same_v<T, Strip>) return std::abs(z0.real()) < std::log(k.R);
        else if constexpr (std::is_same_v<T, LeftHalfPlane>) return z0.real() < 0.0;
        else if constexpr (std::is_same_v<T, UnitBall>) return norm_sq(z) < 1.0;
        else if constexpr (std::is_same_v<T, Polydisc>) return z.vec().cwiseAbs().maxCoeff() < 1.0;
        else if constexpr (std::is_same_v<T, TubeOverBase>) return k.base.contains(z.re());
        else if constexpr (std::is_same_v<T, ReinhardtLog>) {
          for (Eigen::Index j = 0; j < z.size(); ++j)
            if (z[j] == Complex(0.0)) return false;
          return k.base.contains(log_coordinates(z));
        } else {
          const Complex den = 1.0 + k.t * z0;
          if (std::abs(den) < 1e-300) return false;
          return ellipsoid_defining_function(k.eps, apply_scaling(k.t, z)) < 0.0;
        }
      },
      d.kind());
}

inline void require_interior(const ModelDomain& d, const ComplexPoint& z, const char* who = "point") {
  require(membership(d, z), ErrorCode::NotInterior, std::string(who) + " is not an interior point of " + d.name());
}

// A fixed interior point of each kind.
inline ComplexPoint reference_point(const ModelDomain& d) {
  const Eigen::Index n = d.dim();
  if (d.is<PuncturedDisc>()) return ComplexPoint{0.5};
  if (d.is<Annulus>()) return ComplexPoint{1.0};
  if (d.is<LeftHalfPlane>()) return ComplexPoint{-1.0};
  if (d.is<TubeOverBase>()) return ComplexPoint::real(d.as<TubeOverBase>().base.interior_point());
  if (d.is<ReinhardtLog>()) {
    const RealVector x = d.as<ReinhardtLog>().base.interior_point();
    return ComplexPoint::real(RealVector(x.array().exp()));
  }
  if (d.is<ScaledEllipsoid>()) {
    const auto& e = d.as<ScaledEllipsoid>();
    ComplexPoint z(n);
    if (membership(d, z)) return z;
    z[0] = -e.t;
    return z;
  }
  return ComplexPoint(n);
}

// Euclidean distance to the boundary (bases: distance in log/real coordinates). Infinity is never returned
// for bounded kinds.
inline double boundary_distance(const ModelDomain& d, const ComplexPoint& z) {
  check_same_dim(z, d.dim());
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        const double r = std::abs(z[0]);
        if constexpr (std::is_same_v<T, UnitDisc>) return 1.0 - r;
        else if constexpr (std::is_same_v<T, PuncturedDisc>) return std::min(r, 1.0 - r);
        else if constexpr (std::is_same_v<T, Annulus>) return std::min(r - 1.0 / k.R, k.R - r);
        else if constexpr (std::is_same_v<T, Strip>) return std::log(k.R) - std::abs(z[0].real());
        else if constexpr (std::is_same_v<T, LeftHalfPlane>) return -z[0].real();
        else if constexpr (std::is_same_v<T, UnitBall>) return 1.0 - norm(z);
        else if constexpr (std::is_same_v<T, Polydisc>) return 1.0 - z.vec().cwiseAbs().maxCoeff();
        else if constexpr (std::is_same_v<T, TubeOverBase>) return k.base.boundary_distance(z.re());
        else if constexpr (std::is_same_v<T, ReinhardtLog>) {
          for (Eigen::Index j = 0; j < z.size(); ++j)
            if (z[j] == Complex(0.0)) return 0.0;
          return k.base.boundary_distance(log_coordinates(z));
        } else {
          // Sampled exit distance along Halton directions in R^{2N}.
          const Eigen::Index n = z.size();
          auto inside = [&](const ComplexPoint& p) { return ellipsoid_defining_function(k.eps, apply_scaling(k.t, p)) < 0; };
          if (!inside(z)) return 0.0;
          double best = 2.0;
          for (int s = 0; s < 1024; ++s) {
            auto h = halton(static_cast<std::uint64_t>(s), static_cast<int>(2 * n));
            ComplexPoint dir(n);
            double nn = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
              // Box-Muller style map of two uniforms per coordinate onto a Gaussian direction.
              const double u1 = std::max(1e-12, h[static_cast<std::size_t>(2 * j)]);
              const double rr = std::sqrt(-2.0 * std::log(u1));
              dir[j] = std::polar(rr, 2.0 * kPi * h[static_cast<std::size_t>(2 * j + 1)]);
              nn += rr * rr;
            }
            dir = (1.0 / std::sqrt(nn)) * dir;
            auto f = [&](double s2) { return inside(z + s2 * dir) ? -1.0 : 1.0; };
            best = std::min(best, bisect(f, 0.0, 2.0, 1e-13));
          }
          return best;
        }
      },
      d.kind());
}

// Boundary test within tol in the relevant distance; tol default is the membership tolerance.
inline bool is_boundary_point(const ModelDomain& d, const ComplexPoint& z, double tol = 1e-12) {
  check_point(z);
  check_same_dim(z, d.dim());
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        const double r = std::abs(z[0]);
        if constexpr (std::is_same_v<T, UnitDisc>) return std::abs(r - 1.0) <= tol;
        else if constexpr (std::is_same_v<T, PuncturedDisc>) return std::abs(r - 1.0) <= tol || r <= tol;
        else if constexpr (std::is_same_v<T, Annulus>)
          return std::abs(r - k.R) <= tol || std::abs(r - 1.0 / k.R) <= tol;
        else if constexpr (std::is_same_v<T, Strip>) return std::abs(std::abs(z[0].real()) - std::log(k.R)) <= tol;
        else if constexpr (std::is_same_v<T, LeftHalfPlane>) return std::abs(z[0].real()) <= tol;
        else if constexpr (std::is_same_v<T, UnitBall>) return std::abs(norm(z) - 1.0) <= tol;
        else if constexpr (std::is_same_v<T, Polydisc>) {
          const double m = z.vec().cwiseAbs().maxCoeff();
          return std::abs(m - 1.0) <= tol;
        } else if constexpr (std::is_same_v<T, TubeOverBase>)
          return std::abs(k.base.boundary_distance(z.re())) <= tol;
        else if constexpr (std::is_same_v<T, ReinhardtLog>) {
          for (Eigen::Index j = 0; j < z.size(); ++j)
            if (z[j] == Complex(0.0)) return false;
          return std::abs(k.base.boundary_distance(log_coordinates(z))) <= tol;
        } else {
          return std::abs(ellipsoid_defining_function(k.eps, apply_scaling(k.t, z))) <= tol;
        }
      },
      d.kind());
}

class BoundaryPoint {
 public:
  static BoundaryPoint make(ModelDomain d, ComplexPoint p, double tol = 1e-12) {
    require(is_boundary_point(d, p, tol), ErrorCode::InvalidArgument, "point is not on the boundary of " + d.name());
    return BoundaryPoint(std::move(d), std::move(p));
  }
  const ModelDomain& domain() const { return d_; }
  const ComplexPoint& point() const { return p_; }

 private:
  BoundaryPoint(ModelDomain d, ComplexPoint p) : d_(std::move(d)), p_(std::move(p)) {}
  ModelDomain d_;
  ComplexPoint p_;
};

// Nearest-boundary projection for bounded kinds (radial where the boundary is radial).
inline ComplexPoint project_to_boundary(const ModelDomain& d, const ComplexPoint& z) {
  require(d.bounded(), ErrorCode::Unsupported, "boundary projection needs a bounded kind");
  if (d.is<UnitDisc>() || d.is<UnitBall>()) {
    require(norm(z) > 0, ErrorCode::Degenerate, "cannot project the center");
    return (1.0 / norm(z)) * z;
  }
  if (d.is<PuncturedDisc>()) {
    const double r = std::abs(z[0]);
    if (r < 0.5) return ComplexPoint{0.0};
    return ComplexPoint{z[0] / r};
  }
  if (d.is<Annulus>()) {
    const double R = d.as<Annulus>().R, r = std::abs(z[0]);
    return ComplexPoint{z[0] / r * (std::log(r) >= 0 ? R : 1.0 / R)};
  }
  if (d.is<Polydisc>()) {
    ComplexPoint p = z;
    Eigen::Index jm = 0;
    z.vec().cwiseAbs().maxCoeff(&jm);
    p[jm] = z[jm] / std::abs(z[jm]);
    return p;
  }
  if (d.is<ReinhardtLog>()) {
    const auto& base = d.as<ReinhardtLog>().base;
    RealVector x = log_coordinates(z);
    const RealVector c = base.interior_point();
    // Exit point of the ray from the base center through x.
    const RealVector dir = x - c;
    require(dir.norm() > 0, ErrorCode::Degenerate, "cannot project the base center");
    auto f = [&](double s) { return base.boundary_distance(c + s * dir); };
    double hi = 1.0;
    while (f(hi) > 0) hi *= 2.0;
    const double s = bisect(f, 0.0, hi, 1e-15);
    const RealVector xb = c + s * dir;
    ComplexPoint p(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) p[j] = z[j] / std::abs(z[j]) * std::exp(xb[j]);
    return p;
  }
  // Scaled ellipsoid: exit point on the ray from the reference point.
  const ComplexPoint c = reference_point(d);
  const ComplexPoint dir = z - c;
  require(norm(dir) > 0, ErrorCode::Degenerate, "cannot project the reference point");
  auto f = [&](double s) { return membership(d, c + s * dir) ? -1.0 : 1.0; };
  double hi = 1.0;
  while (f(hi) < 0) hi *= 2.0;
  return c + bisect(f, 0.0, hi, 1e-15) * dir;
}

// Escape measure: min(boundary distance, 1/(1+|z|)); tends to 0 exactly when z leaves every compactum.
inline double escape_measure(const ModelDomain& d, const ComplexPoint& z) {
  return std::min(boundary_distance(d, z), 1.0 / (1.0 + norm(z)));
}

}  // namespace kobalab
