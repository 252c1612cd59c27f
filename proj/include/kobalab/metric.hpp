#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "domain.hpp"
#include "planar.hpp"
#include "quadrature.hpp"
#include "tube_metric.hpp"

namespace kobalab {

enum class Method { ClosedForm, DeckInfimum, Sandwich };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::DeckInfimum: return "deck-infimum";
    case Method::Sandwich: return "sandwich";
  }
  return "?";
}

// value is the bracket midpoint when gap > 0.
struct DistanceValue {
  double value = 0.0;
  Method method = Method::ClosedForm;
  double gap = 0.0;

  double lower() const { return value - 0.5 * gap; }
  double upper() const { return value + 0.5 * gap; }

  static DistanceValue exact(double v, Method m = Method::ClosedForm) { return {v, m, 0.0}; }
  static DistanceValue bracket(const Bracket& b, Method m = Method::Sandwich) {
    if (b.upper == b.lower) return {b.upper, m, 0.0};
    return {b.mid(), m, b.gap()};
  }
};

struct DeckIndex {
  std::vector<long> nu;
  friend bool operator==(const DeckIndex&, const DeckIndex&) = default;
};

struct DeckResult {
  DistanceValue value;
  DeckIndex nu;
  int certified_bound = 0;  // shells |nu - nu_0| <= bound were scanned
};

struct MetricOptions {
  TubeOptions tube{};
  double gap_tolerance = 1e-3;  // sandwich gaps above this raise GapExceeded
  int max_lattice_bound = 64;
};

// Ball distance with the cancellation-free numerator |z-w|^2 - sum_{i<j} |z_i w_j - z_j w_i|^2.
inline double ball_distance(const ComplexPoint& z, const ComplexPoint& w) {
  if (z == w) return 0.0;
  const Eigen::Index n = z.size();
  double cross = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) cross += std::norm(z[i] * w[j] - z[j] * w[i]);
  const double num = std::max(0.0, norm_sq(z - w) - cross);
  const double den = std::norm(1.0 - inner(z, w));
  const double nz = norm(z), nw = norm(w);
  const double m = (1.0 - nz) * (1.0 + nz) * (1.0 - nw) * (1.0 + nw) / den;
  return artanh_stable(std::min(1.0, std::sqrt(num / den)), m);
}

inline double ball_metric(const ComplexPoint& z, const ComplexPoint& v) {
  const double nz = norm(z);
  const double d = (1.0 - nz) * (1.0 + nz);
  return std::sqrt(norm_sq(v) / d + std::norm(inner(v, z)) / (d * d));
}

// Principal logarithm coordinate-wise; z_j != 0.
inline ComplexPoint log_point(const ComplexPoint& z) {
  ComplexPoint u(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    require(z[j] != Complex(0.0), ErrorCode::ZeroCoordinate, "log of a zero coordinate");
    u[j] = std::log(z[j]);
  }
  return u;
}

namespace detail {

inline DistanceValue check_gap(const Bracket& b, const MetricOptions& opt, Method m) {
  if (b.gap() > opt.gap_tolerance)
    fail(ErrorCode::GapExceeded, "sandwich gap " + std::to_string(b.gap()) + " exceeds tolerance " +
                                     std::to_string(opt.gap_tolerance));
  return DistanceValue::bracket(b, m);
}

inline void lattice_shell(int n, int B, std::vector<std::vector<long>>& out) {
  // All integer vectors with max-norm exactly B (B = 0 gives the origin), in lexicographic order.
  std::vector<long> cur(static_cast<std::size_t>(n), -B);
  while (true) {
    long mx = 0;
    for (long c : cur) mx = std::max(mx, std::labs(c));
    if (mx == B) out.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == B) cur[static_cast<std::size_t>(k--)] = -B;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
  }
}

}  // namespace detail

// Minimum over deck translates v + 2 pi i nu of the cover distance, with a certified cutoff.
inline DeckResult deck_infimum(const ModelDomain& cover, const ComplexPoint& u, const ComplexPoint& v,
                               std::optional<int> lattice_bound = std::nullopt, const MetricOptions& opt = {}) {
  require(cover.is<Strip>() || cover.is<LeftHalfPlane>() || cover.is<TubeOverBase>(), ErrorCode::Unsupported,
          "deck_infimum needs a strip, half-plane or tube cover");
  require_interior(cover, u, "u");
  require_interior(cover, v, "v");
  if (lattice_bound) require(*lattice_bound >= 0, ErrorCode::InvalidArgument, "lattice bound must be >= 0");
  const int n = static_cast<int>(cover.dim());
  const double twopi = 2.0 * kPi;

  std::vector<long> nu0(static_cast<std::size_t>(n));
  RealVector dc(n);  // residual Im offset after centering, |dc_j| <= pi
  for (int j = 0; j < n; ++j) {
    nu0[static_cast<std::size_t>(j)] = std::lround((u[j].imag() - v[j].imag()) / twopi);
    dc[j] = v[j].imag() + twopi * static_cast<double>(nu0[static_cast<std::size_t>(j)]) - u[j].imag();
  }

  auto translate = [&](const std::vector<long>& nu) {
    ComplexPoint w = v;
    for (int j = 0; j < n; ++j) w[j] += Complex(0.0, twopi * static_cast<double>(nu[static_cast<std::size_t>(j)]));
    return w;
  };

  auto bracket_at = [&](const ComplexPoint& w, double prune) -> Bracket {
    if (cover.is<Strip>()) {
      const double d = strip_model(cover.as<Strip>()).distance(u[0], w[0]);
      return {d, d};
    }
    if (cover.is<LeftHalfPlane>()) {
      const double d = left_half_plane_distance(u[0], w[0]);
      return {d, d};
    }
    return tube_bracket(cover.as<TubeOverBase>().base, u, w, opt.tube, prune);
  };

  auto cheap_lower = [&](const ComplexPoint& w) -> double {
    if (cover.is<TubeOverBase>()) return tube_coordinate_lower(cover.as<TubeOverBase>().base, u, w);
    return bracket_at(w, std::numeric_limits<double>::infinity()).lower;
  };

  // Certified lower bound on every translate in shell B around nu0.
  auto shell_lower = [&](int B) -> double {
    if (cover.is<LeftHalfPlane>()) {
      const double off = std::max(0.0, twopi * B - std::abs(dc[0]));
      return left_half_plane_distance(u[0], Complex(v[0].real(), u[0].imag() + off));
    }
    std::vector<double> widths;
    if (cover.is<Strip>()) {
      widths.push_back(strip_model(cover.as<Strip>()).width());
    } else {
      const auto& base = cover.as<TubeOverBase>().base;
      for (int j = 0; j < n; ++j) {
        const auto [lo, hi] = base.slab(RealVector::Unit(n, j));
        widths.push_back(hi - lo);
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double off = std::max(0.0, twopi * B - std::abs(dc[j]));
      best = std::min(best, kPi * off / (2.0 * widths[static_cast<std::size_t>(j)]));
    }
    return best;
  };

  const bool exact = !cover.is<TubeOverBase>();
  Bracket best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::vector<long> best_nu = nu0;
  double best_key = std::numeric_limits<double>::infinity();
  const int cap = lattice_bound ? *lattice_bound : opt.max_lattice_bound;
  int B = 0;
  for (; B <= cap; ++B) {
    std::vector<std::vector<long>> shell;
    detail::lattice_shell(n, B, shell);
    for (const auto& d : shell) {
      std::vector<long> nu(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) nu[static_cast<std::size_t>(j)] = nu0[static_cast<std::size_t>(j)] + d[static_cast<std::size_t>(j)];
      const ComplexPoint w = translate(nu);
      if (!exact && cheap_lower(w) >= best.upper) continue;
      const Bracket b = bracket_at(w, best.upper);
      if (!std::isfinite(b.upper)) continue;  // pruned: cannot beat the current best
      best.lower = std::min(best.lower, b.lower);
      const double key = exact ? b.upper : b.mid();
      if (b.upper < best.upper) best.upper = b.upper;
      if (key < best_key) best_key = key, best_nu = nu;
    }
    if (!lattice_bound && shell_lower(B + 1) > best.upper) break;
  }
  if (lattice_bound) {
    const double next = shell_lower(*lattice_bound + 1);
    if (!(next > best.upper))
      fail(ErrorCode::CertificateFailure, "lattice bound " + std::to_string(*lattice_bound) +
                                              " not certified; shell lower " + std::to_string(next) + " vs best " +
                                              std::to_string(best.upper));
    B = *lattice_bound;
  } else if (B > cap) {
    fail(ErrorCode::CertificateFailure, "auto-bound did not certify within " + std::to_string(cap) + " shells");
  }
  DeckResult r;
  r.nu.nu = best_nu;
  r.certified_bound = B;
  if (exact) r.value = DistanceValue::exact(best.upper, Method::DeckInfimum);
  else r.value = DistanceValue::bracket(best, Method::DeckInfimum);
  return r;
}

// Kobayashi distance. Symmetric by construction: the pair is put in a canonical order first.
inline DistanceValue distance(const ModelDomain& d, const ComplexPoint& z0, const ComplexPoint& w0,
                              const MetricOptions& opt = {}) {
  require_interior(d, z0, "z");
  require_interior(d, w0, "w");
  const bool swap = lex_less(w0, z0);
  const ComplexPoint& z = swap ? w0 : z0;
  const ComplexPoint& w = swap ? z0 : w0;
  return std::visit(
      [&](const auto& k) -> DistanceValue {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnitDisc>) {
          return DistanceValue::exact(disc_distance(z[0], w[0]));
        } else if constexpr (std::is_same_v<T, Strip>) {
          return DistanceValue::exact(strip_model(k).distance(z[0], w[0]));
        } else if constexpr (std::is_same_v<T, LeftHalfPlane>) {
          return DistanceValue::exact(left_half_plane_distance(z[0], w[0]));
        } else if constexpr (std::is_same_v<T, UnitBall>) {
          return DistanceValue::exact(ball_distance(z, w));
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          double m = 0.0;
          for (Eigen::Index j = 0; j < z.size(); ++j) m = std::max(m, disc_distance(z[j], w[j]));
          return DistanceValue::exact(m);
        } else if constexpr (std::is_same_v<T, PuncturedDisc>) {
          if (z == w) return DistanceValue::exact(0.0, Method::DeckInfimum);
          return deck_infimum(ModelDomain::left_half_plane(), log_point(z), log_point(w), std::nullopt, opt).value;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          if (z == w) return DistanceValue::exact(0.0, Method::DeckInfimum);
          return deck_infimum(ModelDomain::strip(k.R), log_point(z), log_point(w), std::nullopt, opt).value;
        } else if constexpr (std::is_same_v<T, TubeOverBase>) {
          return detail::check_gap(tube_bracket(k.base, z, w, opt.tube), opt, Method::Sandwich);
        } else if constexpr (std::is_same_v<T, ReinhardtLog>) {
          if (z == w) return DistanceValue::exact(0.0, Method::DeckInfimum);
          const auto r = deck_infimum(ModelDomain::tube(k.base), log_point(z), log_point(w), std::nullopt, opt).value;
          return detail::check_gap(Bracket{r.lower(), r.upper()}, opt, Method::DeckInfimum);
        } else {
          // Omega_t sits between B(0, r_in) and the unit ball.
          require(norm(z) < k.r_in && norm(w) < k.r_in, ErrorCode::Unsupported,
                  "points outside the certified inscribed ball of the scaled ellipsoid");
          const double lo = ball_distance(z, w);
          const double hi = ball_distance((1.0 / k.r_in) * z, (1.0 / k.r_in) * w);
          return detail::check_gap(Bracket{lo, std::max(lo, hi)}, opt, Method::Sandwich);
        }
      },
      d.kind());
}

// Distance together with the minimizing deck index, reported for the (z, w) order given.
struct DistanceRecord {
  DistanceValue value;
  std::optional<DeckIndex> deck;  // covered kinds only
};

inline DistanceRecord distance_record(const ModelDomain& d, const ComplexPoint& z0, const ComplexPoint& w0,
                                      const MetricOptions& opt = {}) {
  const DistanceValue v = distance(d, z0, w0, opt);
  if (!(d.is<PuncturedDisc>() || d.is<Annulus>() || d.is<ReinhardtLog>())) return {v, std::nullopt};
  if (z0 == w0) return {v, DeckIndex{std::vector<long>(static_cast<std::size_t>(d.dim()), 0)}};
  const bool swap = lex_less(w0, z0);
  const ComplexPoint& z = swap ? w0 : z0;
  const ComplexPoint& w = swap ? z0 : w0;
  const ModelDomain cover = d.is<PuncturedDisc>() ? ModelDomain::left_half_plane()
                            : d.is<Annulus>()     ? ModelDomain::strip(d.as<Annulus>().R)
                                                  : ModelDomain::tube(d.as<ReinhardtLog>().base);
  DeckIndex nu = deck_infimum(cover, log_point(z), log_point(w), std::nullopt, opt).nu;
  if (swap)
    for (auto& c : nu.nu) c = -c;
  return {v, nu};
}

// Infinitesimal Kobayashi metric k(z; v); covered kinds pull back the cover's metric through exp.
inline DistanceValue infinitesimal_metric(const ModelDomain& d, const ComplexPoint& z, const ComplexPoint& v,
                                          const MetricOptions& opt = {}) {
  require_interior(d, z, "z");
  check_point(v, "v");
  check_same_dim(v, d.dim(), "v");
  auto pull = [&](void) {
    ComplexPoint t(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) t[j] = v[j] / z[j];
    return t;
  };
  return std::visit(
      [&](const auto& k) -> DistanceValue {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnitDisc>) {
          return DistanceValue::exact(disc_metric(z[0], v[0]));
        } else if constexpr (std::is_same_v<T, Strip>) {
          return DistanceValue::exact(strip_model(k).metric(z[0], v[0]));
        } else if constexpr (std::is_same_v<T, LeftHalfPlane>) {
          return DistanceValue::exact(left_half_plane_metric(z[0], v[0]));
        } else if constexpr (std::is_same_v<T, UnitBall>) {
          return DistanceValue::exact(ball_metric(z, v));
        } else if constexpr (std::is_same_v<T, Polydisc>) {
          double m = 0.0;
          for (Eigen::Index j = 0; j < z.size(); ++j) m = std::max(m, disc_metric(z[j], v[j]));
          return DistanceValue::exact(m);
        } else if constexpr (std::is_same_v<T, PuncturedDisc>) {
          return DistanceValue::exact(left_half_plane_metric(std::log(z[0]), pull()[0]));
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return DistanceValue::exact(strip_model(Strip{k.R}).metric(std::log(z[0]), pull()[0]));
        } else if constexpr (std::is_same_v<T, TubeOverBase>) {
          return DistanceValue::bracket(tube_metric_bracket(k.base, z, v, opt.tube));
        } else if constexpr (std::is_same_v<T, ReinhardtLog>) {
          return DistanceValue::bracket(tube_metric_bracket(k.base, log_point(z), pull(), opt.tube));
        } else {
          require(norm(z) < k.r_in, ErrorCode::Unsupported, "point outside the certified inscribed ball");
          const double lo = ball_metric(z, v);
          const double hi = ball_metric((1.0 / k.r_in) * z, (1.0 / k.r_in) * v);
          return DistanceValue::bracket(Bracket{lo, std::max(lo, hi)});
        }
      },
      d.kind());
}

using CurveSampler = std::function<ComplexPoint(double)>;

// Integral of k(gamma(u); gamma'(u)) over [s, t] by adaptive Simpson (abs tol 1e-8, depth 40).
inline DistanceValue hyperbolic_length(const ModelDomain& d, const CurveSampler& gamma, double s, double t,
                                       const CurveSampler& derivative = nullptr, const MetricOptions& opt = {}) {
  require(s <= t, ErrorCode::InvalidArgument, "hyperbolic_length needs s <= t");
  if (s == t) return DistanceValue::exact(0.0);
  const double h = 1e-6;
  auto tangent = [&](double u) {
    if (derivative) return derivative(u);
    return (1.0 / (2.0 * h)) * (gamma(u + h) - gamma(u - h));
  };
  Method method = Method::ClosedForm;
  auto bracket_at = [&](double u) {
    const ComplexPoint p = gamma(u);
    if (!membership(d, p)) fail(ErrorCode::NotInterior, "curve leaves the domain at parameter " + std::to_string(u));
    const DistanceValue k = infinitesimal_metric(d, p, tangent(u), opt);
    if (k.method == Method::Sandwich) method = Method::Sandwich;
    return k;
  };
  SimpsonOptions so;
  const double lo = adaptive_simpson([&](double u) { return bracket_at(u).lower(); }, s, t, so);
  if (method != Method::Sandwich) return DistanceValue::exact(lo);
  const double hi = adaptive_simpson([&](double u) { return bracket_at(u).upper(); }, s, t, so);
  return DistanceValue::bracket(Bracket{lo, std::max(lo, hi)});
}

}  // namespace kobalab
