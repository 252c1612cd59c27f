#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "point.hpp"

namespace kobalab {

struct EuclideanBall {
  RealVector center;
  double radius = 1.0;
};

struct Box {
  RealVector lo, hi;
};

// {x : <normal, x> < offset}
struct HalfSpace {
  RealVector normal;
  double offset = 0.0;
};

struct Polytope {
  std::vector<HalfSpace> facets;  // as given
  std::vector<RealVector> vertices;
};

// Linear frame taking a parallelotope onto a box: x in P  <=>  L x in box(lo, hi).
struct BoxFrame {
  Eigen::MatrixXd L;
  RealVector lo, hi;
};

namespace detail {

inline void enumerate_combinations(int m, int n, std::vector<int>& cur, int start,
                                   const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(cur.size()) == n) {
    visit(cur);
    return;
  }
  for (int i = start; i <= m - (n - static_cast<int>(cur.size())); ++i) {
    cur.push_back(i);
    enumerate_combinations(m, n, cur, i + 1, visit);
    cur.pop_back();
  }
}

// Vertices of {x : N x <= b} by brute force over n-subsets of facets.
inline std::vector<RealVector> enumerate_vertices(const Eigen::MatrixXd& N, const RealVector& b, double tol = 1e-9) {
  const int m = static_cast<int>(N.rows()), n = static_cast<int>(N.cols());
  std::vector<RealVector> out;
  std::vector<int> cur;
  enumerate_combinations(m, n, cur, 0, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd A(n, n);
    RealVector rhs(n);
    for (int k = 0; k < n; ++k) {
      A.row(k) = N.row(idx[static_cast<std::size_t>(k)]);
      rhs[k] = b[idx[static_cast<std::size_t>(k)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) return;
    RealVector x = lu.solve(rhs);
    if (((N * x - b).array() > tol * (1.0 + b.cwiseAbs().array())).any()) return;
    for (const auto& v : out)
      if ((v - x).lpNorm<Eigen::Infinity>() < 1e-10 * (1.0 + x.lpNorm<Eigen::Infinity>())) return;
    out.push_back(x);
  });
  return out;
}

}  // namespace detail

// Bounded open convex set in R^n with closed-form support function.
class ConvexBase {
 public:
  using Kind = std::variant<EuclideanBall, Box, Polytope>;

  static ConvexBase ball(RealVector center, double radius) {
    require(center.size() >= 1, ErrorCode::InvalidArgument, "ball needs dim >= 1");
    require(radius > 0 && std::isfinite(radius), ErrorCode::Degenerate, "ball radius must be positive");
    require(center.allFinite(), ErrorCode::InvalidArgument, "ball center must be finite");
    return ConvexBase(EuclideanBall{std::move(center), radius});
  }

  static ConvexBase unit_ball(int n) { return ball(RealVector::Zero(n), 1.0); }

  static ConvexBase box(RealVector lo, RealVector hi) {
    require(lo.size() == hi.size() && lo.size() >= 1, ErrorCode::DimensionMismatch, "box bounds differ in size");
    require(lo.allFinite() && hi.allFinite(), ErrorCode::InvalidArgument, "box bounds must be finite");
    require(((hi - lo).array() > 0).all(), ErrorCode::Degenerate, "box must have lo < hi in every coordinate");
    return ConvexBase(Box{std::move(lo), std::move(hi)});
  }

  // Vertices are enumerated here; pass them when already known to skip the search.
  static ConvexBase polytope(std::vector<HalfSpace> facets, std::vector<RealVector> vertices = {}) {
    require(!facets.empty(), ErrorCode::Degenerate, "polytope needs facets");
    const Eigen::Index n = facets.front().normal.size();
    require(n >= 1, ErrorCode::InvalidArgument, "polytope needs dim >= 1");
    for (const auto& f : facets) {
      require(f.normal.size() == n, ErrorCode::DimensionMismatch, "facet normals differ in size");
      require(f.normal.allFinite() && std::isfinite(f.offset), ErrorCode::InvalidArgument, "facet not finite");
      require(f.normal.norm() > 0, ErrorCode::Degenerate, "zero facet normal");
    }
    Polytope p{std::move(facets), std::move(vertices)};
    if (p.vertices.empty()) {
      // Cap with a large box; any vertex on the cap means the polytope is unbounded.
      const double big = 1e7;
      const Eigen::Index m = static_cast<Eigen::Index>(p.facets.size());
      Eigen::MatrixXd N(m + 2 * n, n);
      RealVector b(m + 2 * n);
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto& f = p.facets[static_cast<std::size_t>(i)];
        const double s = f.normal.norm();
        N.row(i) = f.normal.transpose() / s;
        b[i] = f.offset / s;
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        N.row(m + 2 * j) = RealVector::Unit(n, j).transpose();
        N.row(m + 2 * j + 1) = -RealVector::Unit(n, j).transpose();
        b[m + 2 * j] = b[m + 2 * j + 1] = big;
      }
      auto verts = detail::enumerate_vertices(N, b);
      for (const auto& v : verts)
        require(v.lpNorm<Eigen::Infinity>() < 0.5 * big, ErrorCode::Degenerate, "polytope is unbounded");
      p.vertices = std::move(verts);
    }
    require(static_cast<Eigen::Index>(p.vertices.size()) >= n + 1, ErrorCode::Degenerate, "polytope has empty interior");
    ConvexBase out(std::move(p));
    require(out.contains(out.interior_point()), ErrorCode::Degenerate, "polytope has empty interior");
    return out;
  }

  const Kind& kind() const { return kind_; }
  Eigen::Index dim() const {
    return std::visit(
        [](const auto& k) -> Eigen::Index {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, EuclideanBall>) return k.center.size();
          else if constexpr (std::is_same_v<T, Box>) return k.lo.size();
          else return k.facets.front().normal.size();
        },
        kind_);
  }

  bool is_ball() const { return std::holds_alternative<EuclideanBall>(kind_); }
  bool is_box() const { return std::holds_alternative<Box>(kind_); }
  bool is_polytope() const { return std::holds_alternative<Polytope>(kind_); }
  const EuclideanBall& as_ball() const { return std::get<EuclideanBall>(kind_); }
  const Box& as_box() const { return std::get<Box>(kind_); }
  const Polytope& as_polytope() const { return std::get<Polytope>(kind_); }

  // h(d) = sup_{x in base} <d, x>
  double support(const RealVector& d) const {
    require(d.size() == dim(), ErrorCode::DimensionMismatch, "support direction has wrong dimension");
    if (is_ball()) return as_ball().center.dot(d) + as_ball().radius * d.norm();
    if (is_box()) {
      const auto& b = as_box();
      double s = 0.0;
      for (Eigen::Index j = 0; j < d.size(); ++j) s += std::max(d[j] * b.lo[j], d[j] * b.hi[j]);
      return s;
    }
    double s = -std::numeric_limits<double>::infinity();
    for (const auto& v : as_polytope().vertices) s = std::max(s, v.dot(d));
    return s;
  }

  // Signed Euclidean distance to the boundary; positive inside (exact for ball/box, facet distance for polytopes).
  double boundary_distance(const RealVector& x) const {
    require(x.size() == dim(), ErrorCode::DimensionMismatch, "point has wrong dimension");
    if (is_ball()) return as_ball().radius - (x - as_ball().center).norm();
    if (is_box()) return std::min((x - as_box().lo).minCoeff(), (as_box().hi - x).minCoeff());
    double s = std::numeric_limits<double>::infinity();
    for (const auto& f : as_polytope().facets) s = std::min(s, (f.offset - f.normal.dot(x)) / f.normal.norm());
    return s;
  }

  bool contains(const RealVector& x) const { return boundary_distance(x) > 0.0; }

  RealVector interior_point() const {
    if (is_ball()) return as_ball().center;
    if (is_box()) return 0.5 * (as_box().lo + as_box().hi);
    RealVector c = RealVector::Zero(dim());
    for (const auto& v : as_polytope().vertices) c += v;
    return c / static_cast<double>(as_polytope().vertices.size());
  }

  // Width interval (-h(-d), h(d)) of <d, .> over the base.
  std::pair<double, double> slab(const RealVector& d) const { return {-support(-d), support(d)}; }

  // Unit outward normals of the facets (box: coordinate axes); empty for balls.
  std::vector<RealVector> facet_normals() const {
    std::vector<RealVector> out;
    if (is_box()) {
      for (Eigen::Index j = 0; j < dim(); ++j) {
        out.push_back(RealVector::Unit(dim(), j));
        out.push_back(-RealVector::Unit(dim(), j));
      }
    } else if (is_polytope()) {
      for (const auto& f : as_polytope().facets) out.push_back(f.normal / f.normal.norm());
    }
    return out;
  }

  // Exact box frame when the base is a box or a parallelotope (n pairs of parallel facets).
  std::optional<BoxFrame> box_frame() const {
    const Eigen::Index n = dim();
    if (is_box()) return BoxFrame{Eigen::MatrixXd::Identity(n, n), as_box().lo, as_box().hi};
    if (!is_polytope()) return std::nullopt;
    const auto& facets = as_polytope().facets;
    if (static_cast<Eigen::Index>(facets.size()) != 2 * n) return std::nullopt;
    std::vector<bool> used(facets.size(), false);
    Eigen::MatrixXd L(n, n);
    RealVector lo(n), hi(n);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      if (used[i]) continue;
      const RealVector ni = facets[i].normal / facets[i].normal.norm();
      bool found = false;
      for (std::size_t j = i + 1; j < facets.size(); ++j) {
        if (used[j]) continue;
        const RealVector nj = facets[j].normal / facets[j].normal.norm();
        if ((ni + nj).norm() < 1e-12) {
          used[i] = used[j] = true;
          L.row(row) = ni.transpose();
          hi[row] = support(ni);
          lo[row] = -support(-ni);
          ++row;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    if (std::abs(L.determinant()) < 1e-12) return std::nullopt;
    return BoxFrame{L, lo, hi};
  }

  double diameter_bound() const {
    if (is_ball()) return 2.0 * as_ball().radius;
    if (is_box()) return (as_box().hi - as_box().lo).norm();
    double d = 0.0;
    const auto& v = as_polytope().vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, (v[i] - v[j]).norm());
    return d;
  }

 private:
  explicit ConvexBase(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

inline bool operator==(const ConvexBase& a, const ConvexBase& b) {
  if (a.kind().index() != b.kind().index() || a.dim() != b.dim()) return false;
  if (a.is_ball()) return a.as_ball().center == b.as_ball().center && a.as_ball().radius == b.as_ball().radius;
  if (a.is_box()) return a.as_box().lo == b.as_box().lo && a.as_box().hi == b.as_box().hi;
  const auto& fa = a.as_polytope().facets;
  const auto& fb = b.as_polytope().facets;
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!(fa[i].normal == fb[i].normal) || fa[i].offset != fb[i].offset) return false;
  return true;
}

// Two boundary points with parallel distinct supporting hyperplanes of common normal d.
class AntipodalPair {
 public:
  static constexpr double kTol = 1e-9;

  // Infers d when not given: ball radius direction, else a facet normal or x - y that certifies both points.
  static AntipodalPair make(const ConvexBase& base, RealVector x, RealVector y, std::optional<RealVector> d = {}) {
    require(x.size() == base.dim() && y.size() == base.dim(), ErrorCode::DimensionMismatch, "antipodal pair dimension");
    require((x - y).norm() > 0, ErrorCode::Degenerate, "antipodal pair with x = y");
    if (d) {
      require(certifies(base, x, y, *d), ErrorCode::CertificateFailure, "supporting hyperplane check failed");
      return AntipodalPair(base, std::move(x), std::move(y), d->normalized());
    }
    std::vector<RealVector> cands;
    if (base.is_ball()) cands.push_back(x - base.as_ball().center);
    for (const auto& n : base.facet_normals()) cands.push_back(n);
    cands.push_back(x - y);
    for (const auto& c : cands) {
      if (c.norm() == 0) continue;
      if (certifies(base, x, y, c)) return AntipodalPair(base, std::move(x), std::move(y), c.normalized());
    }
    fail(ErrorCode::CertificateFailure, "no common supporting normal found for the pair");
  }

  static bool certifies(const ConvexBase& base, const RealVector& x, const RealVector& y, const RealVector& d0) {
    if (d0.size() != base.dim() || d0.norm() == 0) return false;
    const RealVector d = d0.normalized();
    const double scale = 1.0 + std::max(x.lpNorm<Eigen::Infinity>(), y.lpNorm<Eigen::Infinity>());
    const double hx = base.support(d), hy = base.support(-d);
    const bool xs = std::abs(d.dot(x) - hx) <= kTol * scale;
    const bool ys = std::abs(-d.dot(y) - hy) <= kTol * scale;
    const bool closure = base.boundary_distance(x) >= -kTol * scale && base.boundary_distance(y) >= -kTol * scale;
    return xs && ys && closure && (hx + hy) > kTol * scale;
  }

  const ConvexBase& base() const { return base_; }
  const RealVector& x() const { return x_; }
  const RealVector& y() const { return y_; }
  const RealVector& normal() const { return d_; }

 private:
  AntipodalPair(ConvexBase b, RealVector x, RealVector y, RealVector d)
      : base_(std::move(b)), x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {}
  ConvexBase base_;
  RealVector x_, y_, d_;
};

}  // namespace kobalab
