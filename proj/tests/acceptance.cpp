// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// Usage: kobalab_acceptance --cli <path to kobalab>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <kobalab/kobalab.hpp>

using namespace kobalab;

namespace {

constexpr double kTriangleTol = 1e-9;
constexpr double kDefiningTol = 2e-6;
constexpr double kArcLengthTol = 1e-6;
constexpr double kDeckTol = 1e-12;
constexpr double kIsometryTol = 1e-9;
constexpr double kCoverageTol = 1e-6;
constexpr double kSandwichSlack = 1e-6;
constexpr double kRealGap = 1e-3;
constexpr double kContractionTol = 1e-9;
constexpr double kScalingDeviation = 1e-2;
constexpr double kPersistenceTol = 1e-3;
constexpr double kAxiomSeconds = 5.0;
constexpr double kScalingSeconds = 30.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  double angle() { return uniform(-kPi, kPi); }

  ComplexPoint ball(Eigen::Index N, double r = 0.95) {
    for (;;) {
      ComplexPoint z(N);
      for (Eigen::Index j = 0; j < N; ++j) z[j] = Complex(uniform(-r, r), uniform(-r, r));
      if (norm(z) < r) return z;
    }
  }

  ComplexPoint interior(const ModelDomain& d) {
    if (d.is<UnitDisc>() || d.is<UnitBall>()) return ball(d.dim());
    if (d.is<PuncturedDisc>()) return ComplexPoint{std::polar(uniform(1e-3, 0.95), angle())};
    if (d.is<Annulus>()) return ComplexPoint{std::polar(std::pow(d.as<Annulus>().R, uniform(-0.95, 0.95)), angle())};
    if (d.is<Strip>()) return ComplexPoint{Complex(uniform(-0.95, 0.95) * std::log(d.as<Strip>().R), uniform(-4, 4))};
    if (d.is<LeftHalfPlane>()) return ComplexPoint{Complex(-std::exp(uniform(-3, 2)), uniform(-4, 4))};
    if (d.is<Polydisc>()) {
      ComplexPoint z(d.dim());
      for (Eigen::Index j = 0; j < d.dim(); ++j) z[j] = ball(1)[0];
      return z;
    }
    fail(ErrorCode::Unsupported, "no sampler for " + d.name());
  }

  // Uniform parameter inside the curve's interval, clipped to a window on unbounded sides.
  double parameter(const GeodesicCurve& c, double window) {
    const auto& I = c.interval;
    const double lo = std::isfinite(I.a) ? I.a : -window, hi = std::isfinite(I.b) ? I.b : window;
    const double pad = (I.kind == IntervalKind::Line && std::isfinite(I.a)) ? 0.05 * (hi - lo) : 0.0;
    return uniform(lo + pad, std::min(hi - pad, lo + 2.0 * window));
  }

 private:
  std::mt19937_64 rng_;
};

double dist(const GeodesicCurve& c, double s, double t) { return distance(c.domain, c(s), c(t)).value; }

// The geodesic kinds exercised by the identity and arc-length criteria.
GeodesicCurve constructed(Sampler& g, int k, bool arc_length) {
  const double R = 3.0;
  const ConvexBase box = ConvexBase::box(real_vector({-0.5, -1.0}), real_vector({0.5, 1.0}));
  switch (k % 7) {
    case 0: return ball_geodesic_segment(2, g.ball(2, 0.8), g.ball(2, 0.8));
    case 1: return ball_landing_ray(3, g.ball(3, 0.8), BoundaryPoint::make(ModelDomain::unit_ball(3), e1(3)));
    case 2: return strip_horizontal_geodesic(R, g.uniform(-3, 3), arc_length);
    case 3: return strip_vertical_geodesic(R, 0.0);
    case 4: return punctured_disc_radial_geodesic(std::polar(1.0, g.angle()), arc_length);
    case 5: return annulus_radial_geodesic(R, g.uniform(-3, 3), arc_length);
    default: {
      const auto pair = AntipodalPair::make(box, real_vector({g.uniform(-0.5, 0.5), 1.0}),
                                            real_vector({g.uniform(-0.5, 0.5), -1.0}));
      return antipodal_geodesic(box, pair, real_vector({g.angle(), g.angle()}), arc_length);
    }
  }
}

Outcome ac1_metric_axioms() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ModelDomain> kinds{
      ModelDomain::unit_disc(),      ModelDomain::punctured_disc(), ModelDomain::annulus(4.0),
      ModelDomain::strip(4.0),       ModelDomain::left_half_plane(), ModelDomain::unit_ball(2),
      ModelDomain::unit_ball(3),     ModelDomain::polydisc(2),
  };
  Sampler g(1);
  bool symmetric = true, reflexive = true;
  double worst = 0.0;
  for (const auto& d : kinds)
    for (int k = 0; k < 1000; ++k) {
      const ComplexPoint x = g.interior(d), y = g.interior(d), z = g.interior(d);
      const double xy = distance(d, x, y).value;
      symmetric = symmetric && xy == distance(d, y, x).value;
      reflexive = reflexive && distance(d, x, x).value == 0.0;
      worst = std::max(worst, distance(d, x, z).value - xy - distance(d, y, z).value);
    }
  const double secs = seconds_since(t0);
  return {symmetric && reflexive && worst < kTriangleTol && secs < kAxiomSeconds,
          std::to_string(kinds.size()) + " kinds x 1000 triples, symmetry " + (symmetric ? "exact" : "BROKEN") +
              ", max triangle excess " + sci(std::max(worst, 0.0)) + ", " + sci(secs) + " s"};
}

Outcome ac2_defining_identity() {
  Sampler g(2);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const GeodesicCurve c = constructed(g, k, false);
    for (int p = 0; p < 4; ++p) {
      double s = g.parameter(c, 3.0), t = g.parameter(c, 3.0);
      if (s > t) std::swap(s, t);
      const double len = hyperbolic_length(c.domain, c.sample, s, t, c.derivative).value;
      worst = std::max(worst, std::abs(len - dist(c, s, t)));
    }
  }
  return {worst < kDefiningTol, "50 geodesics over 7 kinds, max |length - distance| " + sci(worst)};
}

Outcome ac3_arc_length_law() {
  Sampler g(3);
  double worst = 0.0;
  int curves = 0;
  for (int k = 0; k < 42; ++k) {
    const GeodesicCurve c = constructed(g, k, true);
    if (c.parametrization != Parametrization::ArcLength) continue;
    ++curves;
    // Window 3: below s = -3 the arc-length radial ray on the punctured disc underflows to 0.
    for (int p = 0; p < 32; ++p) {
      const double s = g.parameter(c, 3.0), t = g.parameter(c, 3.0);
      worst = std::max(worst, std::abs(dist(c, s, t) - std::abs(t - s)));
    }
  }
  return {curves > 0 && worst < kArcLengthTol,
          std::to_string(curves) + " arc-length geodesics x 32 pairs, max deviation " + sci(worst)};
}

Outcome ac4_deck_oracle() {
  Sampler g(4);
  const double R = 4.0;
  const ModelDomain A = ModelDomain::annulus(R), P = ModelDomain::punctured_disc();
  const StripModel H{-std::log(R), std::log(R)};
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const bool ann = k % 2 == 0;
    const ComplexPoint z = g.interior(ann ? A : P), w = g.interior(ann ? A : P);
    const Complex u = std::log(z[0]), v = std::log(w[0]);
    double scan = std::numeric_limits<double>::infinity();
    for (int nu = -10; nu <= 10; ++nu) {
      const Complex vn = v + Complex(0.0, 2.0 * kPi * nu);
      scan = std::min(scan, ann ? H.distance(u, vn) : left_half_plane_distance(u, vn));
    }
    worst = std::max(worst, std::abs(distance(ann ? A : P, z, w).value - scan));
  }
  bool trivial = true;
  for (int k = 0; k < 100; ++k) {
    const ComplexPoint x{std::exp(g.uniform(-0.9, 0.9) * std::log(R))}, y{std::exp(g.uniform(-0.9, 0.9) * std::log(R))};
    const DeckResult r = deck_infimum(ModelDomain::strip(R), log_point(x), log_point(y));
    trivial = trivial && r.nu.nu == std::vector<long>{0};
  }
  return {worst < kDeckTol && trivial,
          "200 pairs, max |distance - scan| " + sci(worst) + ", real-positive minimizer nu = 0: " + (trivial ? "yes" : "no")};
}

Outcome ac5_power_map() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3, 5}) {
    const HolomorphicMap F = HolomorphicMap::power(n);
    const IsometryReport r = audit_isometry(F, radial_family(16));
    const InjectivityReport inj = injectivity_probe(F, collision_grid(F, 64));
    ok = ok && r.verdict == Verdict::IsometricAlongFamily && r.max_deviation() < kIsometryTol && !inj.classes.empty();
    detail += "n=" + std::to_string(n) + " dev " + sci(r.max_deviation()) + " classes " +
              std::to_string(inj.classes.size()) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome ac6_exp_annulus() {
  ExampleOptions o;
  o.R = 4.0;
  o.grid = 256;
  o.coverage_tol = kCoverageTol;
  const ExampleBundle b = reproduce_example("exp-annulus", o);
  const auto& c = *b.report.completeness;
  const bool ok = b.report.verdict == Verdict::IsometricAlongFamily && b.report.max_deviation() < kIsometryTol &&
                  c.grid_size == 256 && c.complete() && !b.properness.proper_compatible;
  // The literal reading (lines t0 + is) is reported alongside; only t0 = 0 is a geodesic of the strip.
  const IsometryReport lit = audit_isometry(HolomorphicMap::exp_cover(ModelDomain::strip(4.0)), vertical_family(4.0, 8));
  return {ok, "lines s -> s + i s0 onto radial lines: dev " + sci(b.report.max_deviation()) + ", covered " +
                  std::to_string(c.covered) + "/" + std::to_string(c.grid_size) + ", proper " +
                  (b.properness.proper_compatible ? "yes" : "no") + "; lines t0 + is: " + to_string(lit.verdict) +
                  " (dev " + sci(lit.max_deviation()) + ")"};
}

Outcome ac7_monomial_tube() {
  ExampleOptions o;
  o.n = 2;
  o.members = 20;
  o.targets = 50;
  o.audit.sandwich_slack = kSandwichSlack;
  const ExampleBundle b = reproduce_example("monomial-tube", o);
  bool within = b.report.per_geodesic.size() == 20;
  for (const auto& d : b.report.per_geodesic) within = within && d.max_deviation <= d.max_gap + kSandwichSlack;
  bool mult = false;
  for (const auto& a : b.assertions)
    if (a.name == "multiplicity") mult = a.pass;
  const bool ok = within && b.report.max_gap() < kRealGap && mult && b.multiplicity == 4;
  return {ok, "20 antipodal geodesics, max dev " + sci(b.report.max_deviation()) + ", max gap " +
                  sci(b.report.max_gap()) + ", preimages per target " + std::to_string(b.multiplicity.value_or(0)) +
                  " on 50 targets" + (mult ? "" : " (count FAILED)")};
}

Outcome ac8_schwarz_pick() {
  const ConvexBase ball2 = ConvexBase::unit_ball(2);
  const std::vector<HolomorphicMap> maps{
      HolomorphicMap::identity(ModelDomain::unit_ball(2)),
      HolomorphicMap::power(2),
      HolomorphicMap::power(5),
      HolomorphicMap::exp_cover(ModelDomain::strip(4.0)),
      HolomorphicMap::exp_cover(ModelDomain::left_half_plane()),
      HolomorphicMap::exp_cover(ModelDomain::tube(ball2)),
      HolomorphicMap::monomial(IntegerMatrix::scalar(2, 2), ModelDomain::reinhardt(ball2)),
      HolomorphicMap::ball_mobius(3, ScalingParameter(0.9)),
      HolomorphicMap::compose({HolomorphicMap::power(2), HolomorphicMap::power(3)}),
  };
  MetricOptions raw;
  // Far-apart complex tube points have wide brackets and the extremal refinement can take tens of seconds per
  // pair, so compare unrefined certified brackets and never raise on the gap.
  raw.gap_tolerance = std::numeric_limits<double>::infinity();
  raw.tube.refine = false;
  double worst = -std::numeric_limits<double>::infinity();
  std::string at;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    const HolomorphicMap& F = maps[m];
    const auto pts = interior_grid(F.source(), 1000, 8 + m);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
      // Certified comparison: lower bound in the target against upper bound in the source.
      const double lhs = distance(F.target(), F.eval(pts[k]), F.eval(pts[k + 1]), raw).lower();
      const double rhs = distance(F.source(), pts[k], pts[k + 1], raw).upper();
      if (lhs - rhs > worst) {
        worst = lhs - rhs;
        at = F.name();
      }
    }
  }
  return {worst < kContractionTol,
          std::to_string(maps.size()) + " maps x 500 pairs, certified brackets, max lower(target) - upper(source) " + sci(worst) + " (" + at + ")"};
}

Outcome ac9_metric_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ts{0.5, 0.9, 0.99};
  const auto grid = scaling_grid(2, 0.5, 12);
  const ConvergenceTable flat = metric_convergence_probe(0.0, ts, grid);
  const ConvergenceTable tab = metric_convergence_probe(0.05, ts, grid);
  bool zero = true;
  for (const auto& r : flat.rows) zero = zero && r.deviation == 0.0;
  bool decreasing = true;
  for (std::size_t k = 1; k < tab.rows.size(); ++k) decreasing = decreasing && tab.rows[k].deviation < tab.rows[k - 1].deviation;
  const double secs = seconds_since(t0);
  std::string devs;
  for (const auto& r : tab.rows) devs += (devs.empty() ? "" : " ") + sci(r.deviation);
  return {zero && decreasing && tab.rows.back().deviation < kScalingDeviation && secs < kScalingSeconds,
          std::string("eps=0 ") + (zero ? "exactly 0" : "NONZERO") + "; eps=0.05 at t=0.5,0.9,0.99: " + devs + ", " +
              sci(secs) + " s"};
}

Outcome ac10_persistence() {
  const ConvergenceTable tab = geodesic_persistence_probe(0.0, {0.5, 0.9, 0.99}, ComplexPoint{0.2, Complex(0.0, 0.3)}, 5.0);
  const double last = tab.rows.back().deviation;
  const bool mono = tab.monotone(kPersistenceNoise);
  return {last < kPersistenceTol && mono, "sup deviation on [0,5] at t=0.99 " + sci(last) + ", monotone " + (mono ? "yes" : "no")};
}

Outcome ac11_ball_automorphisms() {
  bool ok = true;
  double worst = 0.0;
  for (double t : {0.25, 0.5, 0.75, 0.9}) {
    const HolomorphicMap F = HolomorphicMap::ball_mobius(2, ScalingParameter(t));
    const IsometryReport r = audit_isometry(F, ball_landing_family(2, e1(2), 8));
    const InjectivityReport inj = injectivity_probe(F, collision_grid(F, 64));
    ok = ok && r.verdict == Verdict::IsometricAlongFamily && r.max_deviation() < kIsometryTol && inj.injective();
    worst = std::max(worst, r.max_deviation());
  }
  return {ok, "t in {0.25,0.5,0.75,0.9}, 8 rays to e1, max dev " + sci(worst) + ", collisions none"};
}

std::string run(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) fail(ErrorCode::InvalidArgument, "cannot run " + cmd);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  if (status != 0) out += "\n<exit " + std::to_string(status) + ">";
  return out;
}

Outcome ac12_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli given"};
  bool same = true;
  std::size_t bytes = 0;
  for (const char* fmt : {"json", "text", "csv"}) {
    const std::string cmd = "\"" + cli + "\" paper-examples --seed 0 --format " + fmt;
    const std::string a = run(cmd), b = run(cmd);
    same = same && a == b && !a.empty();
    bytes += a.size();
  }
  return {same, "json, text and csv outputs byte-identical across two runs (" + std::to_string(bytes) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kobalab acceptance suite"};
  std::string cli;
  app.add_option("--cli", cli, "path to the kobalab executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1_metric_axioms},     {"AC2", ac2_defining_identity}, {"AC3", ac3_arc_length_law},
      {"AC4", ac4_deck_oracle},       {"AC5", ac5_power_map},         {"AC6", ac6_exp_annulus},
      {"AC7", ac7_monomial_tube},     {"AC8", ac8_schwarz_pick},      {"AC9", ac9_metric_convergence},
      {"AC10", ac10_persistence},     {"AC11", ac11_ball_automorphisms},
      {"AC12", [&] { return ac12_determinism(cli); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%-5s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
