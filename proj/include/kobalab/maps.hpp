#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "convex_base.hpp"
#include "domain.hpp"
#include "integer_matrix.hpp"
#include "metric.hpp"
#include "mobius.hpp"
#include "point.hpp"

namespace kobalab {

// Integer power by repeated squaring; exact on Gaussian integers and dyadic values.
inline Complex complex_ipow(Complex z, long long k) {
  if (k < 0) {
    require(z != Complex(0.0), ErrorCode::ZeroCoordinate, "zero base with a negative exponent");
    return 1.0 / complex_ipow(z, -k);
  }
  Complex r = 1.0;
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

inline Complex monomial_power(const ComplexPoint& z, const std::vector<long long>& alpha) {
  check_point(z);
  require(static_cast<Eigen::Index>(alpha.size()) == z.size(), ErrorCode::DimensionMismatch, "exponent length");
  Complex p = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) p *= complex_ipow(z[static_cast<Eigen::Index>(j)], alpha[j]);
  return p;
}

inline ComplexPoint monomial_apply(const IntegerMatrix& A, const ComplexPoint& z) {
  check_same_dim(z, A.n());
  ComplexPoint w(A.n());
  for (Eigen::Index j = 0; j < A.n(); ++j) w[j] = monomial_power(z, A.row(j));
  return w;
}

// All |det A| points z in (C*)^n with Phi_A(z) = w.
inline std::vector<ComplexPoint> monomial_preimages(const IntegerMatrix& A, const ComplexPoint& w) {
  check_point(w);
  check_same_dim(w, A.n());
  require(A.det() != 0, ErrorCode::SingularMatrix, "monomial map with det A = 0");
  const Eigen::Index n = A.n();
  RealVector logmod(n), phi(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    require(w[j] != Complex(0.0), ErrorCode::ZeroCoordinate, "preimages need w in (C*)^n");
    logmod[j] = std::log(std::abs(w[j]));
    phi[j] = std::arg(w[j]);
  }
  const auto lu = A.real().fullPivLu();
  const RealVector u = lu.solve(logmod);
  const RealVector theta0 = lu.solve(phi);
  const SmithForm s = smith_normal_form(A);
  const Eigen::MatrixXd V = s.V.cast<double>();
  // theta_m = A^{-1} phi + 2 pi V D^{-1} m for m in prod [0, d_i).
  std::vector<ComplexPoint> out;
  std::vector<long long> m(static_cast<std::size_t>(n), 0);
  while (true) {
    RealVector q(n);
    for (Eigen::Index i = 0; i < n; ++i) q[i] = static_cast<double>(m[static_cast<std::size_t>(i)]) / static_cast<double>(s.D(i, i));
    const RealVector theta = theta0 + 2.0 * kPi * (V * q);
    ComplexPoint z(n);
    for (Eigen::Index j = 0; j < n; ++j) z[j] = std::polar(std::exp(u[j]), std::remainder(theta[j], 2.0 * kPi));
    out.push_back(z);
    Eigen::Index k = 0;
    while (k < n && ++m[static_cast<std::size_t>(k)] == s.D(k, k)) m[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return out;
}

// Facets per coordinate pair for circumscribed polygons of ellipsoidal images.
inline constexpr int kLogImageFacets = 64;

// A(base). Balls under scaled-orthogonal A stay balls; other balls become circumscribed polytopes.
inline ConvexBase log_image(const IntegerMatrix& A, const ConvexBase& base) {
  require(A.n() == base.dim(), ErrorCode::DimensionMismatch, "matrix and base dimensions differ");
  require(A.det() != 0, ErrorCode::SingularMatrix, "log image needs det A != 0");
  const Eigen::MatrixXd M = A.real();
  const Eigen::Index n = A.n();
  if (base.is_ball()) {
    const auto& b = base.as_ball();
    const Eigen::MatrixXd G = M.transpose() * M;
    const double c2 = G(0, 0);
    if ((G - c2 * Eigen::MatrixXd::Identity(n, n)).norm() == 0.0)
      return ConvexBase::ball(M * b.center, std::sqrt(c2) * b.radius);
    std::vector<HalfSpace> facets;
    auto add = [&](const RealVector& d) { facets.push_back({d, d.dot(M * b.center) + b.radius * (M.transpose() * d).norm()}); };
    if (n == 1) {
      add(RealVector::Ones(1));
      add(-RealVector::Ones(1));
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        for (int k = 0; k < kLogImageFacets; ++k) {
          const double a = 2.0 * kPi * k / kLogImageFacets;
          add(std::cos(a) * RealVector::Unit(n, i) + std::sin(a) * RealVector::Unit(n, j));
        }
    return ConvexBase::polytope(std::move(facets));
  }
  // <nrm, x> < off  becomes  <A^{-T} nrm, y> < off for y = A x.
  const Eigen::MatrixXd MinvT = M.inverse().transpose();
  std::vector<HalfSpace> facets;
  std::vector<RealVector> verts;
  if (base.is_box()) {
    const auto& bx = base.as_box();
    for (Eigen::Index j = 0; j < n; ++j) {
      const RealVector e = RealVector::Unit(n, j);
      facets.push_back({MinvT * e, bx.hi[j]});
      facets.push_back({-(MinvT * e), -bx.lo[j]});
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      RealVector v(n);
      for (Eigen::Index j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? bx.hi[j] : bx.lo[j];
      verts.push_back(M * v);
    }
  } else {
    for (const auto& f : base.as_polytope().facets) facets.push_back({MinvT * f.normal, f.offset});
    for (const auto& v : base.as_polytope().vertices) verts.push_back(M * v);
  }
  for (auto& f : facets) {
    const double s = f.normal.norm();
    f.normal /= s;
    f.offset /= s;
  }
  return ConvexBase::polytope(std::move(facets), std::move(verts));
}

// Transport of an antipodal pair; the normal moves by the inverse transpose.
inline AntipodalPair antipodal_image_check(const IntegerMatrix& A, const AntipodalPair& pair) {
  require(A.det() != 0, ErrorCode::SingularMatrix, "antipodal transport needs det A != 0");
  const Eigen::MatrixXd M = A.real();
  const ConvexBase img = log_image(A, pair.base());
  const RealVector d = (M.inverse().transpose() * pair.normal()).normalized();
  return AntipodalPair::make(img, M * pair.x(), M * pair.y(), d);
}

class HolomorphicMap;

struct PowerMap {
  int n;
};
struct ExpCover {};
struct MonomialMap {
  IntegerMatrix A;
};
struct BallMobius {
  double t;
};
struct IdentityMap {};
struct Composition {
  std::vector<std::shared_ptr<const HolomorphicMap>> parts;  // applied first to last
};

class HolomorphicMap {
 public:
  using Kind = std::variant<PowerMap, ExpCover, MonomialMap, BallMobius, IdentityMap, Composition>;

  // lambda -> lambda^n on the punctured disc.
  static HolomorphicMap power(int n) {
    require(n >= 1, ErrorCode::InvalidArgument, "power map needs n >= 1");
    return {PowerMap{n}, ModelDomain::punctured_disc(), ModelDomain::punctured_disc()};
  }

  // exp: strip -> annulus, left half-plane -> punctured disc, tube -> Reinhardt domain.
  static HolomorphicMap exp_cover(const ModelDomain& source) {
    if (source.is<Strip>()) return {ExpCover{}, source, ModelDomain::annulus(source.as<Strip>().R)};
    if (source.is<LeftHalfPlane>()) return {ExpCover{}, source, ModelDomain::punctured_disc()};
    if (source.is<TubeOverBase>()) return {ExpCover{}, source, ModelDomain::reinhardt(source.as<TubeOverBase>().base)};
    fail(ErrorCode::Unsupported, "exp covering is defined on strips, the left half-plane and tubes");
  }

  static HolomorphicMap monomial(IntegerMatrix A, const ModelDomain& source) {
    require(A.det() != 0, ErrorCode::SingularMatrix, "monomial map needs det A != 0");
    if (source.is<ReinhardtLog>()) {
      ModelDomain target = ModelDomain::reinhardt(log_image(A, source.as<ReinhardtLog>().base));
      return {MonomialMap{std::move(A)}, source, std::move(target)};
    }
    require(A.n() == 1 && A(0, 0) > 0, ErrorCode::Unsupported, "one-variable monomials need a positive exponent");
    if (source.is<PuncturedDisc>()) return {MonomialMap{std::move(A)}, source, source};
    if (source.is<Annulus>()) {
      const double R = std::pow(source.as<Annulus>().R, static_cast<double>(A(0, 0)));
      return {MonomialMap{std::move(A)}, source, ModelDomain::annulus(R)};
    }
    fail(ErrorCode::Unsupported, "monomial maps act on Reinhardt domains, annuli and the punctured disc");
  }

  static HolomorphicMap ball_mobius(int N, ScalingParameter t) {
    return {BallMobius{t.value()}, ModelDomain::unit_ball(N), ModelDomain::unit_ball(N)};
  }

  static HolomorphicMap identity(const ModelDomain& d) { return {IdentityMap{}, d, d}; }

  static HolomorphicMap compose(const std::vector<HolomorphicMap>& maps) {
    require(!maps.empty(), ErrorCode::InvalidArgument, "empty composition");
    Composition c;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (i > 0)
        require(maps[i - 1].target() == maps[i].source(), ErrorCode::DimensionMismatch,
                "composition: target of one map is not the source of the next");
      c.parts.push_back(std::make_shared<const HolomorphicMap>(maps[i]));
    }
    return {std::move(c), maps.front().source(), maps.back().target()};
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
  const ModelDomain& source() const { return source_; }
  const ModelDomain& target() const { return target_; }

  std::string name() const {
    static const char* names[] = {"power", "exp-cover", "monomial", "ball-mobius", "identity", "compose"};
    return names[kind_.index()];
  }

  // Power(n) as the 1x1 monomial [[n]].
  std::optional<IntegerMatrix> matrix() const {
    if (is<PowerMap>()) return IntegerMatrix::scalar(1, as<PowerMap>().n);
    if (is<MonomialMap>()) return as<MonomialMap>().A;
    return std::nullopt;
  }

  // Evaluation without the source check.
  ComplexPoint eval(const ComplexPoint& z) const {
    return std::visit(
        [&](const auto& k) -> ComplexPoint {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, PowerMap> || std::is_same_v<T, MonomialMap>) {
            return monomial_apply(*matrix(), z);
          } else if constexpr (std::is_same_v<T, ExpCover>) {
            ComplexPoint w(z.size());
            for (Eigen::Index j = 0; j < z.size(); ++j) w[j] = std::exp(z[j]);
            return w;
          } else if constexpr (std::is_same_v<T, BallMobius>) {
            return apply_scaling(k.t, z);
          } else if constexpr (std::is_same_v<T, IdentityMap>) {
            return z;
          } else {
            ComplexPoint w = z;
            for (const auto& p : k.parts) w = p->eval(w);
            return w;
          }
        },
        kind_);
  }

  // dF_z v.
  ComplexPoint pushforward(const ComplexPoint& z, const ComplexPoint& v) const {
    return std::visit(
        [&](const auto& k) -> ComplexPoint {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, PowerMap> || std::is_same_v<T, MonomialMap>) {
            const IntegerMatrix A = *matrix();
            const ComplexPoint w = monomial_apply(A, z);
            ComplexPoint out(z.size());
            for (Eigen::Index j = 0; j < z.size(); ++j) {
              Complex s = 0.0;
              for (Eigen::Index i = 0; i < z.size(); ++i) s += static_cast<double>(A(j, i)) * v[i] / z[i];
              out[j] = w[j] * s;
            }
            return out;
          } else if constexpr (std::is_same_v<T, ExpCover>) {
            ComplexPoint out(z.size());
            for (Eigen::Index j = 0; j < z.size(); ++j) out[j] = std::exp(z[j]) * v[j];
            return out;
          } else if constexpr (std::is_same_v<T, BallMobius>) {
            return scaling_pushforward(k.t, z, v);
          } else if constexpr (std::is_same_v<T, IdentityMap>) {
            return v;
          } else {
            ComplexPoint p = z, u = v;
            for (const auto& f : k.parts) {
              u = f->pushforward(p, u);
              p = f->eval(p);
            }
            return u;
          }
        },
        kind_);
  }

  bool is_covering() const { return is<ExpCover>() || is<PowerMap>(); }

 private:
  HolomorphicMap(Kind k, ModelDomain s, ModelDomain t) : kind_(std::move(k)), source_(std::move(s)), target_(std::move(t)) {}
  Kind kind_;
  ModelDomain source_, target_;
};

inline ComplexPoint covering_apply(const HolomorphicMap& F, const ComplexPoint& z) {
  require_interior(F.source(), z, "z");
  return F.eval(z);
}

}  // namespace kobalab
