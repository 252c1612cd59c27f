#pragma once
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "checker.hpp"
#include "domain.hpp"
#include "geodesics.hpp"
#include "integer_matrix.hpp"
#include "maps.hpp"
#include "metric.hpp"
#include "scaling.hpp"

namespace kobalab {

// Insertion-ordered so that emitted documents are stable and readable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) { fail(ErrorCode::Schema, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();  // JSON has no infinity
  if (!j.is_number()) schema_error(std::string(what) + " must be a number");
  return j.get<double>();
}

inline long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema_error(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline bool boolean(const Json& j, const char* what) {
  if (!j.is_boolean()) schema_error(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

inline std::string text(const Json& j, const char* what) {
  if (!j.is_string()) schema_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    schema_error(e.what());
  }
}

}  // namespace detail

// --- scalars and points ---------------------------------------------------------------------------------------------

// Coordinates are [re, im] pairs; a bare number is read as a real coordinate.
inline Json encode(Complex z) { return Json::array({detail::num(z.real()), detail::num(z.imag())}); }

inline Complex decode_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) detail::schema_error("complex number must be a number or [re, im]");
  return {detail::number(j[0], "re"), detail::number(j[1], "im")};
}

inline Json encode(const ComplexPoint& z) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) a.push_back(encode(z[i]));
  return a;
}

inline ComplexPoint decode_point(const Json& j) {
  if (!j.is_array() || j.empty()) detail::schema_error("point must be a non-empty array of coordinates");
  ComplexPoint z(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) z[static_cast<Eigen::Index>(i)] = decode_complex(j[i]);
  if (!z.finite()) detail::schema_error("point has non-finite coordinates");
  return z;
}

inline Json encode(const RealVector& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(detail::num(x[i]));
  return a;
}

inline RealVector decode_real_vector(const Json& j, const char* what = "vector") {
  if (!j.is_array() || j.empty()) detail::schema_error(std::string(what) + " must be a non-empty array");
  RealVector x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) x[static_cast<Eigen::Index>(i)] = detail::number(j[i], what);
  return x;
}

namespace detail {

inline double parse_real(const std::string& t, const std::string& whole) {
  if (t.empty() || t == "+") return 1.0;  // bare "i"
  if (t == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') schema_error("cannot parse coordinate '" + whole + "'");
  return v;
}

// "a", "bi", "a+bi", "a-i".
inline Complex parse_coordinate(const std::string& t) {
  if (t.empty()) schema_error("empty coordinate");
  if (t.back() != 'i') return {parse_real(t, t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, parse_real(body, t)};
  return {parse_real(body.substr(0, split), t), parse_real(body.substr(split), t)};
}

}  // namespace detail

// "0.5", "-2i", "0.3+0.4i", coordinates separated by commas ("0.5,0.1-0.2i"), or a JSON point.
inline ComplexPoint parse_point(const std::string& s) {
  const auto first = s.find_first_not_of(' ');
  if (first != std::string::npos && s[first] == '[') return detail::guarded([&] { return decode_point(Json::parse(s)); });
  std::vector<Complex> coords;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char c : tok)
      if (c != ' ') t += c;
    coords.push_back(detail::parse_coordinate(t));
  }
  if (coords.empty()) detail::schema_error("empty point");
  const ComplexPoint z(coords);
  if (!z.finite()) detail::schema_error("point has non-finite coordinates");
  return z;
}

// --- convex bases and domains ---------------------------------------------------------------------------------------

inline Json encode(const ConvexBase& b) {
  if (b.is_ball()) return {{"kind", "ball"}, {"center", encode(b.as_ball().center)}, {"radius", b.as_ball().radius}};
  if (b.is_box()) return {{"kind", "box"}, {"lo", encode(b.as_box().lo)}, {"hi", encode(b.as_box().hi)}};
  Json facets = Json::array(), vertices = Json::array();
  for (const auto& f : b.as_polytope().facets) facets.push_back({{"normal", encode(f.normal)}, {"offset", f.offset}});
  for (const auto& v : b.as_polytope().vertices) vertices.push_back(encode(v));
  return {{"kind", "polytope"}, {"facets", facets}, {"vertices", vertices}};
}

inline ConvexBase decode_base(const Json& j) {
  return detail::guarded([&] {
    const std::string kind = detail::text(detail::field(j, "kind"), "base kind");
    if (kind == "ball")
      return ConvexBase::ball(decode_real_vector(detail::field(j, "center"), "center"),
                              detail::number(detail::field(j, "radius"), "radius"));
    if (kind == "box")
      return ConvexBase::box(decode_real_vector(detail::field(j, "lo"), "lo"),
                             decode_real_vector(detail::field(j, "hi"), "hi"));
    if (kind == "polytope") {
      const Json& fs = detail::field(j, "facets");
      if (!fs.is_array()) detail::schema_error("facets must be an array");
      std::vector<HalfSpace> facets;
      for (const auto& f : fs)
        facets.push_back({decode_real_vector(detail::field(f, "normal"), "normal"),
                          detail::number(detail::field(f, "offset"), "offset")});
      std::vector<RealVector> vertices;
      if (const auto it = j.find("vertices"); it != j.end())
        for (const auto& v : *it) vertices.push_back(decode_real_vector(v, "vertex"));
      return ConvexBase::polytope(std::move(facets), std::move(vertices));
    }
    detail::schema_error("unknown base kind '" + kind + "'");
  });
}

inline Json encode(const ModelDomain& d) {
  Json j{{"kind", d.name()}};
  if (d.is<Annulus>()) j["R"] = d.as<Annulus>().R;
  else if (d.is<Strip>()) j["R"] = d.as<Strip>().R;
  else if (d.is<UnitBall>()) j["N"] = d.as<UnitBall>().N;
  else if (d.is<Polydisc>()) j["N"] = d.as<Polydisc>().N;
  else if (d.is<TubeOverBase>()) j["base"] = encode(d.as<TubeOverBase>().base);
  else if (d.is<ReinhardtLog>()) j["base"] = encode(d.as<ReinhardtLog>().base);
  else if (d.is<ScaledEllipsoid>()) {
    const auto& e = d.as<ScaledEllipsoid>();
    j["N"] = e.N;
    j["eps"] = e.eps;
    j["t"] = e.t;
  }
  return j;
}

inline ModelDomain decode_domain(const Json& j) {
  return detail::guarded([&] {
    const std::string kind = detail::text(detail::field(j, "kind"), "domain kind");
    auto R = [&] { return detail::number(detail::field(j, "R"), "R"); };
    auto N = [&] { return static_cast<int>(detail::integer(detail::field(j, "N"), "N")); };
    if (kind == "unit-disc") return ModelDomain::unit_disc();
    if (kind == "punctured-disc") return ModelDomain::punctured_disc();
    if (kind == "annulus") return ModelDomain::annulus(R());
    if (kind == "strip") return ModelDomain::strip(R());
    if (kind == "left-half-plane") return ModelDomain::left_half_plane();
    if (kind == "unit-ball") return ModelDomain::unit_ball(N());
    if (kind == "polydisc") return ModelDomain::polydisc(N());
    if (kind == "tube") return ModelDomain::tube(decode_base(detail::field(j, "base")));
    if (kind == "reinhardt-log") return ModelDomain::reinhardt(decode_base(detail::field(j, "base")));
    if (kind == "scaled-ellipsoid")
      return ModelDomain::scaled_ellipsoid(N(), detail::number(detail::field(j, "eps"), "eps"),
                                           detail::number(detail::field(j, "t"), "t"));
    detail::schema_error("unknown domain kind '" + kind + "'");
  });
}

// --- matrices and maps ----------------------------------------------------------------------------------------------

inline Json encode(const IntegerMatrix& A) { return Json(A.rows()); }

inline IntegerMatrix decode_matrix(const Json& j) {
  return detail::guarded([&] {
    if (!j.is_array() || j.empty()) detail::schema_error("matrix must be a non-empty array of integer rows");
    std::vector<std::vector<long long>> rows;
    for (const auto& r : j) {
      if (!r.is_array()) detail::schema_error("matrix rows must be arrays");
      std::vector<long long> row;
      for (const auto& x : r) row.push_back(detail::integer(x, "matrix entry"));
      rows.push_back(std::move(row));
    }
    if (rows.size() != rows.front().size()) detail::schema_error("matrix must be square");
    return IntegerMatrix::from_rows(rows);
  });
}

inline Json encode(const HolomorphicMap& F) {
  Json j{{"kind", F.name()}};
  if (F.is<PowerMap>()) j["n"] = F.as<PowerMap>().n;
  else if (F.is<ExpCover>()) j["source"] = encode(F.source());
  else if (F.is<MonomialMap>()) {
    j["A"] = encode(F.as<MonomialMap>().A);
    j["source"] = encode(F.source());
  } else if (F.is<BallMobius>()) {
    j["N"] = F.source().dim();
    j["t"] = F.as<BallMobius>().t;
  } else if (F.is<IdentityMap>()) j["domain"] = encode(F.source());
  else {
    Json parts = Json::array();
    for (const auto& p : F.as<Composition>().parts) parts.push_back(encode(*p));
    j["maps"] = parts;
  }
  return j;
}

inline HolomorphicMap decode_map(const Json& j) {
  return detail::guarded([&] {
    const std::string kind = detail::text(detail::field(j, "kind"), "map kind");
    if (kind == "power") return HolomorphicMap::power(static_cast<int>(detail::integer(detail::field(j, "n"), "n")));
    if (kind == "exp-cover") return HolomorphicMap::exp_cover(decode_domain(detail::field(j, "source")));
    if (kind == "monomial")
      return HolomorphicMap::monomial(decode_matrix(detail::field(j, "A")), decode_domain(detail::field(j, "source")));
    if (kind == "ball-mobius")
      return HolomorphicMap::ball_mobius(static_cast<int>(detail::integer(detail::field(j, "N"), "N")),
                                         ScalingParameter(detail::number(detail::field(j, "t"), "t")));
    if (kind == "identity") return HolomorphicMap::identity(decode_domain(detail::field(j, "domain")));
    if (kind == "compose") {
      const Json& ms = detail::field(j, "maps");
      if (!ms.is_array()) detail::schema_error("maps must be an array");
      std::vector<HolomorphicMap> parts;
      for (const auto& m : ms) parts.push_back(decode_map(m));
      return HolomorphicMap::compose(parts);
    }
    detail::schema_error("unknown map kind '" + kind + "'");
  });
}

// --- geodesics and families -----------------------------------------------------------------------------------------

// Serializable recipe for one of the built-in families.
struct FamilyDescriptor {
  std::string kind = "radial";  // radial | horizontal | vertical | ball-landing | antipodal-ball
  int count = 8;
  double R = 4.0;               // horizontal, vertical
  int N = 2;                    // ball-landing, antipodal-ball
  std::optional<ComplexPoint> p;  // ball-landing target, e_1 when absent
  bool arc_length = false;

  GeodesicFamily build() const {
    if (kind == "radial") return radial_family(count, arc_length);
    if (kind == "horizontal") return horizontal_family(R, count, arc_length);
    if (kind == "vertical") return vertical_family(R, count);
    if (kind == "ball-landing") return ball_landing_family(N, p ? *p : e1(N), count);
    if (kind == "antipodal-ball") return antipodal_ball_family(N, count, arc_length);
    detail::schema_error("unknown family kind '" + kind + "'");
  }

  friend bool operator==(const FamilyDescriptor& a, const FamilyDescriptor& b) {
    return a.kind == b.kind && a.count == b.count && a.R == b.R && a.N == b.N && a.p == b.p &&
           a.arc_length == b.arc_length;
  }
};

inline Json encode(const FamilyDescriptor& f) {
  Json j{{"kind", f.kind}, {"count", f.count}};
  if (f.kind == "horizontal" || f.kind == "vertical") j["R"] = f.R;
  if (f.kind == "ball-landing" || f.kind == "antipodal-ball") j["N"] = f.N;
  if (f.p) j["p"] = encode(*f.p);
  if (f.kind != "vertical" && f.kind != "ball-landing") j["arc_length"] = f.arc_length;
  return j;
}

inline FamilyDescriptor decode_family(const Json& j) {
  return detail::guarded([&] {
    FamilyDescriptor f;
    f.kind = detail::text(detail::field(j, "kind"), "family kind");
    if (f.kind != "radial" && f.kind != "horizontal" && f.kind != "vertical" && f.kind != "ball-landing" &&
        f.kind != "antipodal-ball")
      detail::schema_error("unknown family kind '" + f.kind + "'");
    if (j.contains("count")) f.count = static_cast<int>(detail::integer(j["count"], "count"));
    if (f.count < 1) detail::schema_error("count must be positive");
    if (j.contains("R")) f.R = detail::number(j["R"], "R");
    if (j.contains("N")) f.N = static_cast<int>(detail::integer(j["N"], "N"));
    if (j.contains("p")) f.p = decode_point(j["p"]);
    if (j.contains("arc_length")) f.arc_length = detail::boolean(j["arc_length"], "arc_length");
    return f;
  });
}

// Single geodesics for export. Kinds: ball-segment {N, z, w}, ball-ray {N, z, p}, strip-vertical {R, t0},
// strip-horizontal {R, s0}, punctured-radial {omega}, annulus-radial {R, s0}, antipodal {base, x, y, phase},
// family-member {family, index}. arc_length is optional where the constructor offers it.
inline GeodesicCurve decode_geodesic(const Json& j) {
  return detail::guarded([&] {
    using detail::field;
    using detail::number;
    const std::string kind = detail::text(field(j, "kind"), "geodesic kind");
    const bool al = j.contains("arc_length") && detail::boolean(j["arc_length"], "arc_length");
    auto N = [&] { return static_cast<Eigen::Index>(detail::integer(field(j, "N"), "N")); };
    if (kind == "ball-segment") return ball_geodesic_segment(N(), decode_point(field(j, "z")), decode_point(field(j, "w")));
    if (kind == "ball-ray") {
      const Eigen::Index n = N();
      return ball_landing_ray(n, decode_point(field(j, "z")),
                              BoundaryPoint::make(detail::ball_like(n), decode_point(field(j, "p"))));
    }
    if (kind == "strip-vertical") return strip_vertical_geodesic(number(field(j, "R"), "R"), number(field(j, "t0"), "t0"));
    if (kind == "strip-horizontal")
      return strip_horizontal_geodesic(number(field(j, "R"), "R"), number(field(j, "s0"), "s0"), al);
    if (kind == "punctured-radial") return punctured_disc_radial_geodesic(decode_complex(field(j, "omega")), al);
    if (kind == "annulus-radial")
      return annulus_radial_geodesic(number(field(j, "R"), "R"), number(field(j, "s0"), "s0"), al);
    if (kind == "antipodal") {
      const ConvexBase base = decode_base(field(j, "base"));
      std::optional<RealVector> phase;
      if (j.contains("phase")) phase = decode_real_vector(j["phase"], "phase");
      return antipodal_geodesic(base,
                                AntipodalPair::make(base, decode_real_vector(field(j, "x"), "x"),
                                                    decode_real_vector(field(j, "y"), "y")),
                                phase, al);
    }
    if (kind == "family-member") {
      const GeodesicFamily fam = decode_family(field(j, "family")).build();
      const long long k = detail::integer(field(j, "index"), "index");
      if (k < 0 || k >= static_cast<long long>(fam.members.size())) detail::schema_error("member index out of range");
      return fam.members[static_cast<std::size_t>(k)];
    }
    detail::schema_error("unknown geodesic kind '" + kind + "'");
  });
}

// --- values and reports ---------------------------------------------------------------------------------------------

inline Json encode(const DistanceValue& v) {
  return {{"value", v.value}, {"method", to_string(v.method)}, {"gap", v.gap}};
}

inline DistanceValue decode_distance(const Json& j) {
  return detail::guarded([&] {
    DistanceValue v;
    v.value = detail::number(detail::field(j, "value"), "value");
    const std::string m = detail::text(detail::field(j, "method"), "method");
    if (m == "closed-form") v.method = Method::ClosedForm;
    else if (m == "deck-infimum") v.method = Method::DeckInfimum;
    else if (m == "sandwich") v.method = Method::Sandwich;
    else detail::schema_error("unknown method '" + m + "'");
    v.gap = detail::number(detail::field(j, "gap"), "gap");
    return v;
  });
}

inline Json encode(const DeckIndex& nu) { return Json(nu.nu); }

inline Json encode(const IsometryReport& r) {
  Json per = Json::array();
  for (const auto& g : r.per_geodesic)
    per.push_back({{"id", g.id},
                   {"max_deviation", g.max_deviation},
                   {"max_gap", g.max_gap},
                   {"tolerance", g.tolerance},
                   {"comparisons", g.comparisons},
                   {"pass", g.pass()}});
  Json j{{"map", r.map},
         {"family", r.family},
         {"verdict", to_string(r.verdict)},
         {"max_deviation", r.max_deviation()},
         {"max_gap", r.max_gap()},
         {"per_geodesic", per}};
  if (r.completeness) {
    const auto& c = *r.completeness;
    j["completeness"] = {{"grid_size", c.grid_size}, {"covered", c.covered}, {"max_miss", c.max_miss},
                         {"tol", c.tol},             {"complete", c.complete()}};
  }
  if (r.injectivity) {
    const auto& in = *r.injectivity;
    Json cols = Json::array();
    for (const auto& c : in.collisions) cols.push_back({{"i", c.i}, {"j", c.j}, {"separation", c.separation}});
    j["injectivity"] = {{"injective", in.injective()},
                        {"deck_consistent", in.deck_consistent},
                        {"classes", in.classes},
                        {"collisions", cols}};
  }
  return j;
}

inline IsometryReport decode_report(const Json& j) {
  return detail::guarded([&] {
    IsometryReport r;
    r.map = detail::text(detail::field(j, "map"), "map");
    r.family = detail::text(detail::field(j, "family"), "family");
    const std::string v = detail::text(detail::field(j, "verdict"), "verdict");
    if (v != "isometric-along-family" && v != "violated") detail::schema_error("unknown verdict '" + v + "'");
    r.verdict = v == "violated" ? Verdict::Violated : Verdict::IsometricAlongFamily;
    for (const auto& g : detail::field(j, "per_geodesic"))
      r.per_geodesic.push_back({detail::text(detail::field(g, "id"), "id"),
                                detail::number(detail::field(g, "max_deviation"), "max_deviation"),
                                detail::number(detail::field(g, "max_gap"), "max_gap"),
                                detail::number(detail::field(g, "tolerance"), "tolerance"),
                                static_cast<int>(detail::integer(detail::field(g, "comparisons"), "comparisons"))});
    if (j.contains("completeness")) {
      const Json& c = j["completeness"];
      r.completeness = Coverage{static_cast<int>(detail::integer(detail::field(c, "grid_size"), "grid_size")),
                                static_cast<int>(detail::integer(detail::field(c, "covered"), "covered")),
                                detail::number(detail::field(c, "max_miss"), "max_miss"),
                                detail::number(detail::field(c, "tol"), "tol")};
    }
    if (j.contains("injectivity")) {
      const Json& in = j["injectivity"];
      InjectivityReport ir;
      ir.deck_consistent = detail::boolean(detail::field(in, "deck_consistent"), "deck_consistent");
      ir.classes = detail::field(in, "classes").get<std::vector<std::vector<std::size_t>>>();
      for (const auto& c : detail::field(in, "collisions"))
        ir.collisions.push_back({detail::field(c, "i").get<std::size_t>(), detail::field(c, "j").get<std::size_t>(),
                                 detail::number(detail::field(c, "separation"), "separation")});
      r.injectivity = std::move(ir);
    }
    return r;
  });
}

inline Json encode(const PropernessReport& p) {
  Json seqs = Json::array();
  for (const auto& s : p.sequences)
    seqs.push_back({{"source_escape", s.source}, {"image_escape", s.image}, {"compatible", s.compatible}});
  return {{"proper_compatible", p.proper_compatible}, {"sequences", seqs}};
}

inline Json encode(const ExampleBundle& b) {
  Json as = Json::array();
  for (const auto& a : b.assertions) as.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  Json j{{"name", b.name}, {"pass", b.pass()}, {"assertions", as}, {"report", encode(b.report)}};
  j["properness"] = encode(b.properness);
  j["multiplicity"] = b.multiplicity ? Json(*b.multiplicity) : Json(nullptr);
  return j;
}

inline Json encode(const ConvergenceTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back({{"t", r.t}, {"key", r.key}, {"deviation", r.deviation}, {"gap", r.gap}});
  return {{"max_deviation", t.max_deviation()}, {"monotone", t.monotone(kPersistenceNoise)}, {"rows", rows}};
}

inline Json encode(const DivergenceReport& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows)
    rows.push_back({{"t", r.t}, {"re_pi1", r.re_pi1}, {"norm", r.norm}, {"band", r.band}});
  return {{"divergent", d.divergent}, {"rows", rows}};
}

// Top-level documents carry the schema version.
inline Json versioned(Json body) {
  Json j{{"schema_version", kSchemaVersion}};
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline void check_version(const Json& j) {
  if (!j.is_object()) detail::schema_error("document must be a JSON object");
  if (!j.contains("schema_version")) return;
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion)
    detail::schema_error("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
}

// --- CSV ------------------------------------------------------------------------------------------------------------

// 17 significant digits: every double survives a text round trip.
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// Coordinates joined by ';' so the point stays in one CSV cell.
inline std::string csv_point(const ComplexPoint& z) {
  std::string s;
  for (Eigen::Index i = 0; i < z.size(); ++i) s += (i ? ";" : "") + csv_complex(z[i]);
  return s;
}

inline std::string csv_deck(const std::optional<DeckIndex>& nu) {
  if (!nu) return "";
  std::string s;
  for (std::size_t i = 0; i < nu->nu.size(); ++i) s += (i ? ";" : "") + std::to_string(nu->nu[i]);
  return s;
}

inline void write_geodesic_csv(std::ostream& os, const GeodesicCurve& c, const std::vector<double>& ts) {
  const Eigen::Index n = c.domain.dim();
  os << "t";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",re_z" << j << ",im_z" << j;
  os << "\n";
  for (double t : ts) {
    const ComplexPoint z = c(t);
    os << csv_number(t);
    for (Eigen::Index j = 0; j < n; ++j) os << "," << csv_number(z[j].real()) << "," << csv_number(z[j].imag());
    os << "\n";
  }
}

inline void write_convergence_csv(std::ostream& os, const ConvergenceTable& t) {
  os << "t,key,deviation,gap\n";
  for (const auto& r : t.rows)
    os << csv_number(r.t) << "," << r.key << "," << csv_number(r.deviation) << "," << csv_number(r.gap) << "\n";
}

inline void write_points_csv(std::ostream& os, const std::vector<ComplexPoint>& pts) {
  const Eigen::Index n = pts.empty() ? 0 : pts.front().size();
  os << "index";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",re_z" << j << ",im_z" << j;
  os << "\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    os << k;
    for (Eigen::Index j = 0; j < n; ++j) os << "," << csv_number(pts[k][j].real()) << "," << csv_number(pts[k][j].imag());
    os << "\n";
  }
}

// --- aligned text ---------------------------------------------------------------------------------------------------

inline std::string sci(double v, int prec = 3) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", prec, v);
  return buf;
}

inline void write_report_text(std::ostream& os, const IsometryReport& r) {
  os << "map " << r.map << "  family " << r.family << "  verdict " << to_string(r.verdict) << "\n";
  os << std::left << std::setw(18) << "geodesic" << std::right << std::setw(14) << "max_dev" << std::setw(14)
     << "max_gap" << std::setw(14) << "tolerance" << std::setw(8) << "pairs" << std::setw(6) << "ok" << "\n";
  for (const auto& g : r.per_geodesic)
    os << std::left << std::setw(18) << g.id << std::right << std::setw(14) << sci(g.max_deviation) << std::setw(14)
       << sci(g.max_gap) << std::setw(14) << sci(g.tolerance) << std::setw(8) << g.comparisons << std::setw(6)
       << (g.pass() ? "yes" : "NO") << "\n";
  if (r.completeness)
    os << "coverage " << r.completeness->covered << "/" << r.completeness->grid_size << "  max miss "
       << sci(r.completeness->max_miss) << "\n";
  if (r.injectivity)
    os << "collisions " << r.injectivity->collisions.size() << " in " << r.injectivity->classes.size()
       << " classes  deck-consistent " << (r.injectivity->deck_consistent ? "yes" : "no") << "\n";
}

inline void write_bundle_text(std::ostream& os, const ExampleBundle& b) {
  os << (b.pass() ? "PASS " : "FAIL ") << b.name << "\n";
  for (const auto& a : b.assertions)
    os << "  " << std::left << std::setw(24) << a.name << std::setw(6) << (a.pass ? "ok" : "FAIL") << a.detail << "\n";
  os << std::right;
}

}  // namespace kobalab
