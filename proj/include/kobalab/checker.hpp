#pragma once
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "domain.hpp"
#include "geodesics.hpp"
#include "maps.hpp"
#include "metric.hpp"
#include "numerics.hpp"

namespace kobalab {

struct AuditOptions {
  int samples = 32;               // parameters per geodesic; all pairs are compared
  double tol = 1e-9;              // closed-form and exact deck metrics
  double sandwich_slack = 1e-6;   // added to the gap when either side is bracketed
  double horizon = 6.0;           // window length on rays and infinite lines
  MetricOptions metric{};
};

struct GeodesicDeviation {
  std::string id;
  double max_deviation = 0.0;
  double max_gap = 0.0;
  double tolerance = 0.0;  // tol, widened by max_gap + slack when a bracket is involved
  int comparisons = 0;
  bool pass() const { return max_deviation < tolerance; }
};

struct Coverage {
  int grid_size = 0;
  int covered = 0;
  double max_miss = 0.0;
  double tol = 0.0;
  bool complete() const { return covered == grid_size; }
};

struct Collision {
  std::size_t i, j;  // grid indices
  double separation;  // |F(z_i) - F(z_j)|
};

struct InjectivityReport {
  std::vector<Collision> collisions;
  std::vector<std::vector<std::size_t>> classes;  // connected components of size >= 2
  bool deck_consistent = true;                    // collisions are deck translates
  bool injective() const { return collisions.empty(); }
};

enum class Verdict { IsometricAlongFamily, Violated };

inline const char* to_string(Verdict v) {
  return v == Verdict::IsometricAlongFamily ? "isometric-along-family" : "violated";
}

struct IsometryReport {
  std::string map;
  std::string family;
  std::vector<GeodesicDeviation> per_geodesic;
  std::optional<Coverage> completeness;
  std::optional<InjectivityReport> injectivity;
  Verdict verdict = Verdict::IsometricAlongFamily;

  double max_deviation() const {
    double m = 0.0;
    for (const auto& g : per_geodesic) m = std::max(m, g.max_deviation);
    return m;
  }
  double max_gap() const {
    double m = 0.0;
    for (const auto& g : per_geodesic) m = std::max(m, g.max_gap);
    return m;
  }
};

// Compare K_source(gamma(t), gamma(s)) with K_target(F gamma(t), F gamma(s)) over all sampled pairs.
inline IsometryReport audit_isometry(const HolomorphicMap& F, const GeodesicFamily& family, const AuditOptions& opt = {}) {
  require(!family.members.empty(), ErrorCode::InvalidArgument, "family has no listed members");
  IsometryReport rep{F.name(), family.name, {}, std::nullopt, std::nullopt, Verdict::IsometricAlongFamily};
  for (const auto& g : family.members) {
    require(g.domain == F.source(), ErrorCode::InvalidArgument, "family member " + g.id + " is not in the map source");
    std::vector<ComplexPoint> p, q;
    for (double t : sample_parameters(g.interval, opt.samples, opt.horizon)) {
      p.push_back(g(t));
      require_interior(F.source(), p.back(), "geodesic sample");
      q.push_back(F.eval(p.back()));
      if (!membership(F.target(), q.back()))
        fail(ErrorCode::NotInterior, "image of " + g.id + " at t = " + std::to_string(t) + " leaves the target");
    }
    GeodesicDeviation dev{g.id, 0.0, 0.0, opt.tol, 0};
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        const DistanceValue ks = distance(F.source(), p[i], p[j], opt.metric);
        const DistanceValue kt = distance(F.target(), q[i], q[j], opt.metric);
        dev.max_deviation = std::max(dev.max_deviation, std::abs(ks.value - kt.value));
        dev.max_gap = std::max(dev.max_gap, ks.gap + kt.gap);
        ++dev.comparisons;
      }
    if (dev.max_gap > 0.0) dev.tolerance = opt.tol + dev.max_gap + opt.sandwich_slack;
    if (!dev.pass()) rep.verdict = Verdict::Violated;
    rep.per_geodesic.push_back(dev);
  }
  return rep;
}

namespace detail {

// Euclidean miss of z from the curve, minimised over the parameter window.
inline double curve_miss(const GeodesicCurve& g, const ComplexPoint& z, double horizon) {
  const Interval& I = g.interval;
  double lo = I.a, hi = I.b;
  if (I.kind == IntervalKind::Ray) hi = I.a + horizon;
  if (!std::isfinite(lo) && !std::isfinite(hi)) lo = -0.5 * horizon, hi = 0.5 * horizon;
  else if (!std::isfinite(lo)) lo = hi - horizon;
  else if (!std::isfinite(hi)) hi = lo + horizon;
  if (hi <= lo) return euclid(g(lo), z);
  auto f = [&](double t) { return euclid(g(t), z); };
  return scan_min(f, lo, hi, 256, 1e-14, 3).second;
}

}  // namespace detail

// For each grid point the smallest miss over the family (its generator when present, else the listed members).
inline Coverage completeness_check(const GeodesicFamily& family, const std::vector<ComplexPoint>& grid, double tol = 1e-9,
                                   double horizon = 12.0) {
  require(!family.members.empty() || family.through, ErrorCode::InvalidArgument, "empty family");
  Coverage c{static_cast<int>(grid.size()), 0, 0.0, tol};
  for (const auto& z : grid) {
    require_interior(family.domain, z, "grid point");
    double miss = std::numeric_limits<double>::infinity();
    if (family.through) {
      if (auto g = family.through(z)) miss = detail::curve_miss(*g, z, horizon);
    }
    if (!(miss < tol))
      for (const auto& g : family.members) miss = std::min(miss, detail::curve_miss(g, z, horizon));
    if (miss < tol) ++c.covered;
    c.max_miss = std::max(c.max_miss, miss);
  }
  return c;
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline bool deck_related(const HolomorphicMap& F, const ComplexPoint& a, const ComplexPoint& b) {
  if (auto A = F.matrix()) {
    for (const auto& p : monomial_preimages(*A, F.eval(a)))
      if (euclid(p, b) < 1e-8 * (1.0 + norm(b))) return true;
    return false;
  }
  if (F.is<ExpCover>()) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      const Complex d = b[j] - a[j];
      const double k = d.imag() / (2.0 * kPi);
      if (std::abs(d.real()) > 1e-8 || std::abs(k - std::round(k)) > 1e-8) return false;
    }
    return true;
  }
  return true;
}

}  // namespace detail

inline InjectivityReport injectivity_probe(const HolomorphicMap& F, const std::vector<ComplexPoint>& grid, double tol = 1e-9) {
  std::vector<ComplexPoint> img;
  for (const auto& z : grid) img.push_back(F.eval(z));
  InjectivityReport r;
  detail::UnionFind uf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (grid[i] == grid[j]) continue;
      const double sep = euclid(img[i], img[j]);
      if (sep < tol) {
        r.collisions.push_back({i, j, sep});
        uf.unite(i, j);
        if (!detail::deck_related(F, grid[i], grid[j])) r.deck_consistent = false;
      }
    }
  std::vector<std::vector<std::size_t>> groups(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) groups[uf.find(i)].push_back(i);
  for (auto& g : groups)
    if (g.size() >= 2) r.classes.push_back(std::move(g));
  return r;
}

struct SequenceEscape {
  std::vector<double> source;  // escape measure of z_k in the source
  std::vector<double> image;   // escape measure of F(z_k) in the target
  bool compatible = false;     // images escape as well
};

struct PropernessReport {
  std::vector<SequenceEscape> sequences;
  bool proper_compatible = true;
};

// A sequence escapes when its last escape measure is below this fraction of its first.
inline constexpr double kEscapeRatio = 0.05;

inline PropernessReport properness_probe(const HolomorphicMap& F, const std::vector<std::vector<ComplexPoint>>& sequences) {
  PropernessReport r;
  for (const auto& seq : sequences) {
    require(seq.size() >= 2, ErrorCode::InvalidArgument, "a boundary sequence needs at least two points");
    SequenceEscape e;
    for (const auto& z : seq) {
      require_interior(F.source(), z, "sequence point");
      e.source.push_back(escape_measure(F.source(), z));
      e.image.push_back(escape_measure(F.target(), F.eval(z)));
    }
    require(e.source.back() < kEscapeRatio * e.source.front(), ErrorCode::InvalidArgument,
            "sequence does not approach the boundary of the source");
    e.compatible = e.image.back() < kEscapeRatio * e.image.front();
    if (!e.compatible) r.proper_compatible = false;
    r.sequences.push_back(std::move(e));
  }
  return r;
}

// --- interior grids -----------------------------------------------------------------------------------------------

// count quasi-random interior points; unbounded directions are cut to Im in [-pi, pi] (strip, tube) or
// Re in (-4, 0) (half-plane). seed shifts the Halton index.
inline std::vector<ComplexPoint> interior_grid(const ModelDomain& d, int count, std::uint64_t seed = 0) {
  const Eigen::Index n = d.dim();
  RealVector lo(2 * n), hi(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double a = -1.0, b = 1.0, c = -1.0, e = 1.0;
    if (d.is<Annulus>()) a = c = -d.as<Annulus>().R, b = e = d.as<Annulus>().R;
    else if (d.is<Strip>()) a = -std::log(d.as<Strip>().R), b = -a, c = -kPi, e = kPi;
    else if (d.is<LeftHalfPlane>()) a = -4.0, b = 0.0, c = -kPi, e = kPi;
    else if (d.is<TubeOverBase>() || d.is<ReinhardtLog>()) {
      const ConvexBase& base = d.is<TubeOverBase>() ? d.as<TubeOverBase>().base : d.as<ReinhardtLog>().base;
      a = -base.support(-RealVector::Unit(n, j));
      b = base.support(RealVector::Unit(n, j));
      c = -kPi, e = kPi;
    }
    lo[2 * j] = a, hi[2 * j] = b, lo[2 * j + 1] = c, hi[2 * j + 1] = e;
  }
  std::vector<ComplexPoint> out;
  std::uint64_t k = 1 + seed * 7919;
  while (static_cast<int>(out.size()) < count) {
    const auto h = halton(k++, static_cast<int>(2 * n));
    ComplexPoint z(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = lo[2 * j] + (hi[2 * j] - lo[2 * j]) * h[static_cast<std::size_t>(2 * j)];
      const double y = lo[2 * j + 1] + (hi[2 * j + 1] - lo[2 * j + 1]) * h[static_cast<std::size_t>(2 * j + 1)];
      z[j] = d.is<ReinhardtLog>() ? std::exp(Complex(x, y)) : Complex(x, y);
    }
    if (membership(d, z)) out.push_back(z);
  }
  return out;
}

// Grid on which collisions can actually occur: full fibres for monomial maps, 2 pi i translates for exp
// coverings, plain interior points otherwise.
inline std::vector<ComplexPoint> collision_grid(const HolomorphicMap& F, int count, std::uint64_t seed = 0) {
  std::vector<ComplexPoint> out;
  if (const auto A = F.matrix()) {
    for (const auto& w : interior_grid(F.target(), count, seed + 1))
      for (const auto& p : monomial_preimages(*A, w))
        if (membership(F.source(), p)) out.push_back(p);
    return out;
  }
  for (const auto& z : interior_grid(F.source(), count, seed + 1)) {
    out.push_back(z);
    if (!F.is<ExpCover>()) continue;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      ComplexPoint t = z;
      t[j] += Complex(0.0, 2.0 * kPi);
      out.push_back(t);
    }
  }
  return out;
}

// --- the three worked examples --------------------------------------------------------------------------------------

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleBundle {
  std::string name;
  IsometryReport report;
  PropernessReport properness;
  std::optional<long long> multiplicity;
  std::vector<Assertion> assertions;

  bool pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
  }
};

struct ExampleOptions {
  int n = 2;                 // power for power-disc, dimension for monomial-tube
  double R = 4.0;            // exp-annulus
  int members = 0;           // 0: 8 radial/horizontal lines, 20 antipodal geodesics
  int grid = 256;            // completeness grid
  double coverage_tol = 1e-9;
  int targets = 50;          // monomial-tube multiplicity targets
  std::uint64_t seed = 0;
  AuditOptions audit{};
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"power-disc", "exp-annulus", "monomial-tube"};
  return names;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Grid saturated by deck orbits: all preimages of quasi-random target points.
inline std::vector<ComplexPoint> orbit_grid(const HolomorphicMap& F, int targets, std::uint64_t seed) {
  std::vector<ComplexPoint> out;
  for (const auto& w : interior_grid(F.target(), targets, seed + 1))
    for (const auto& p : monomial_preimages(*F.matrix(), w)) out.push_back(p);
  return out;
}

inline void add_common(ExampleBundle& b) {
  const auto& r = b.report;
  b.assertions.push_back({"isometric-along-family", r.verdict == Verdict::IsometricAlongFamily,
                          "max deviation " + fmt(r.max_deviation()) + " over " + std::to_string(r.per_geodesic.size()) +
                              " geodesics"});
  b.assertions.push_back({"complete-family", r.completeness->complete(),
                          std::to_string(r.completeness->covered) + "/" + std::to_string(r.completeness->grid_size) +
                              " covered, max miss " + fmt(r.completeness->max_miss)});
}

}  // namespace detail

inline ExampleBundle reproduce_example(const std::string& name, const ExampleOptions& opt = {}) {
  ExampleBundle b;
  b.name = name;
  if (name == "power-disc") {
    require(opt.n >= 1, ErrorCode::InvalidArgument, "power needs n >= 1");
    const HolomorphicMap F = HolomorphicMap::power(opt.n);
    const GeodesicFamily fam = radial_family(opt.members > 0 ? opt.members : 8);
    b.report = audit_isometry(F, fam, opt.audit);
    b.report.completeness = completeness_check(fam, interior_grid(F.source(), opt.grid, opt.seed), opt.coverage_tol);
    b.report.injectivity = injectivity_probe(F, detail::orbit_grid(F, 16, opt.seed));
    std::vector<std::vector<ComplexPoint>> seqs(2);
    for (int k = 1; k <= 24; ++k) {
      seqs[0].push_back(ComplexPoint{std::polar(1.0 - std::ldexp(1.0, -k), 0.7)});
      seqs[1].push_back(ComplexPoint{std::polar(std::ldexp(1.0, -k), -1.3)});
    }
    b.properness = properness_probe(F, seqs);
    detail::add_common(b);
    const auto& inj = *b.report.injectivity;
    bool sized = !inj.classes.empty();
    for (const auto& c : inj.classes) sized = sized && static_cast<int>(c.size()) == opt.n;
    b.assertions.push_back({opt.n >= 2 ? "non-injective" : "injective",
                            opt.n >= 2 ? sized && inj.deck_consistent : inj.injective(),
                            std::to_string(inj.classes.size()) + " collision classes of size " + std::to_string(opt.n)});
    b.assertions.push_back({"proper", b.properness.proper_compatible, "images of boundary sequences escape"});
    b.multiplicity = opt.n;
  } else if (name == "exp-annulus") {
    const ModelDomain strip = ModelDomain::strip(opt.R);
    const HolomorphicMap F = HolomorphicMap::exp_cover(strip);
    const GeodesicFamily fam = horizontal_family(opt.R, opt.members > 0 ? opt.members : 8);
    b.report = audit_isometry(F, fam, opt.audit);
    b.report.completeness = completeness_check(fam, interior_grid(strip, opt.grid, opt.seed), opt.coverage_tol);
    std::vector<ComplexPoint> grid;
    for (const auto& z : interior_grid(strip, 16, opt.seed + 1)) {
      grid.push_back(z);
      grid.push_back(ComplexPoint{z[0] + Complex(0.0, 2.0 * kPi)});
    }
    b.report.injectivity = injectivity_probe(F, grid);
    std::vector<std::vector<ComplexPoint>> seqs(1);
    for (int k = 0; k < 24; ++k) seqs[0].push_back(ComplexPoint{Complex(0.3, 10.0 * k)});
    b.properness = properness_probe(F, seqs);
    detail::add_common(b);
    b.assertions.push_back({"non-proper", !b.properness.proper_compatible,
                            "Im z -> infinity at Re z = 0.3: image escape stays at " +
                                detail::fmt(b.properness.sequences[0].image.back())});
    b.assertions.push_back({"non-injective", !b.report.injectivity->injective() && b.report.injectivity->deck_consistent,
                            std::to_string(b.report.injectivity->classes.size()) + " collision classes"});
  } else if (name == "monomial-tube") {
    require(opt.n >= 1 && opt.n <= 4, ErrorCode::InvalidArgument, "monomial-tube supports 1 <= n <= 4");
    const ModelDomain D = ModelDomain::reinhardt(ConvexBase::unit_ball(opt.n));
    const HolomorphicMap F = HolomorphicMap::monomial(IntegerMatrix::scalar(opt.n, 2), D);
    const GeodesicFamily fam = antipodal_ball_family(opt.n, opt.members > 0 ? opt.members : 20);
    b.report = audit_isometry(F, fam, opt.audit);
    b.report.completeness = completeness_check(fam, interior_grid(D, opt.grid, opt.seed), opt.coverage_tol);
    b.report.injectivity = injectivity_probe(F, detail::orbit_grid(F, 8, opt.seed));
    std::vector<std::vector<ComplexPoint>> seqs(1);
    RealVector x = RealVector::Ones(opt.n) / std::sqrt(static_cast<double>(opt.n));
    for (int k = 1; k <= 24; ++k) seqs[0].push_back(ComplexPoint::real(RealVector(((1.0 - std::ldexp(1.0, -k)) * x).array().exp())));
    b.properness = properness_probe(F, seqs);
    detail::add_common(b);
    // Multiplicity on random targets in Phi(D).
    const long long expect = 1LL << opt.n;
    bool counts = F.matrix()->det() == expect;
    double worst = 0.0;
    for (const auto& w : interior_grid(F.target(), opt.targets, opt.seed + 2)) {
      const auto pre = monomial_preimages(*F.matrix(), w);
      counts = counts && static_cast<long long>(pre.size()) == expect;
      for (const auto& p : pre) {
        counts = counts && membership(D, p);
        worst = std::max(worst, max_abs(F.eval(p), w));
      }
    }
    b.multiplicity = expect;
    b.assertions.push_back({"multiplicity", counts && worst < 1e-10,
                            std::to_string(expect) + " preimages on " + std::to_string(opt.targets) +
                                " targets, forward error " + detail::fmt(worst)});
    b.assertions.push_back({"real-gap", b.report.max_gap() < 1e-3, "max sandwich gap " + detail::fmt(b.report.max_gap())});
    b.assertions.push_back({"non-injective", !b.report.injectivity->injective() && b.report.injectivity->deck_consistent,
                            std::to_string(b.report.injectivity->classes.size()) + " collision classes"});
    b.assertions.push_back({"proper", b.properness.proper_compatible, "images of boundary sequences escape"});
  } else {
    fail(ErrorCode::InvalidArgument, "unknown example " + name);
  }
  return b;
}

}  // namespace kobalab
