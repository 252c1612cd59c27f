// kobalab: distances, geodesic exports, scaling probes and isometry audits from the command line.
//
// Exit status: 0 success, 1 failed expectation or assertion, 2 bad input or config, 3 point not interior.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <kobalab/kobalab.hpp>

namespace {

using namespace kobalab;

struct Globals {
  std::string out;
  std::string format = "text";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string config;
  std::string domain;
  std::string map;
  std::string family;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Schema, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Descriptor arguments are inline JSON, @file, or (domains only) a bare kind name.
Json descriptor(const std::string& arg) {
  if (arg.empty()) fail(ErrorCode::Schema, "missing descriptor");
  const std::string src = arg[0] == '@' ? slurp(arg.substr(1)) : arg;
  const auto first = src.find_first_not_of(" \t\n");
  if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) {
    try {
      return Json::parse(src);
    } catch (const Json::exception& e) {
      fail(ErrorCode::Schema, e.what());
    }
  }
  return Json{{"kind", src}};
}

Json read_config(const std::string& path) {
  try {
    Json j = Json::parse(slurp(path));
    if (j.is_object()) check_version(j);
    return j;
  } catch (const Json::exception& e) {
    fail(ErrorCode::Schema, path + ": " + e.what());
  }
}

// Output goes to --out when given; everything is assembled first so a failure leaves no partial file.
void emit(const Globals& g, const std::string& body) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) fail(ErrorCode::Schema, "cannot write " + g.out);
  f << body;
}

void check_format(const Globals& g) {
  if (g.format != "csv" && g.format != "json" && g.format != "text")
    fail(ErrorCode::Schema, "format must be csv, json or text");
}

// --- dist -------------------------------------------------------------------------------------------------------------

struct DistArgs {
  std::string z, w;
  double R = 0.0;
  int N = 0;
  double eps = -1.0, t = -1.0;
};

ModelDomain domain_from_args(const Globals& g, const DistArgs& a) {
  Json d = descriptor(g.domain.empty() ? "unit-disc" : g.domain);
  if (a.R > 0.0 && !d.contains("R")) d["R"] = a.R;
  if (a.N > 0 && !d.contains("N")) d["N"] = a.N;
  if (a.eps >= 0.0 && !d.contains("eps")) d["eps"] = a.eps;
  if (a.t >= 0.0 && !d.contains("t")) d["t"] = a.t;
  return decode_domain(d);
}

std::string dist_row(const ModelDomain& d, const ComplexPoint& z, const ComplexPoint& w, const DistanceRecord& r) {
  return d.name() + "," + csv_point(z) + "," + csv_point(w) + "," + csv_number(r.value.value) + "," +
         to_string(r.value.method) + "," + csv_number(r.value.gap) + "," + csv_deck(r.deck) + "\n";
}

int cmd_dist(const Globals& g, const DistArgs& a) {
  check_format(g);
  const std::string header = "domain,z,w,value,method,gap,deck_index\n";
  if (!g.config.empty()) {
    const Json cfg = read_config(g.config);
    const Json& rows = cfg.is_array() ? cfg : detail::field(cfg, "queries");
    if (!rows.is_array()) fail(ErrorCode::Schema, "batch input must be a list of {domain, z, w}");
    std::string csv = header;
    Json out = Json::array();
    for (const auto& q : rows) {
      const ModelDomain d = decode_domain(detail::field(q, "domain"));
      auto point = [&](const char* k) {
        const Json& p = detail::field(q, k);
        return p.is_string() ? parse_point(p.get<std::string>()) : decode_point(p);
      };
      const ComplexPoint z = point("z"), w = point("w");
      const DistanceRecord r = distance_record(d, z, w);
      csv += dist_row(d, z, w, r);
      Json o = encode(r.value);
      o["deck_index"] = r.deck ? encode(*r.deck) : Json(nullptr);
      out.push_back(o);
    }
    emit(g, g.format == "json" ? versioned({{"results", out}}).dump(2) + "\n" : csv);
    return 0;
  }
  if (a.z.empty() || a.w.empty()) fail(ErrorCode::Schema, "dist needs --z and --w (or --config for batch mode)");
  const ModelDomain d = domain_from_args(g, a);
  const ComplexPoint z = parse_point(a.z), w = parse_point(a.w);
  const DistanceRecord r = distance_record(d, z, w);
  if (g.format == "csv") emit(g, header + dist_row(d, z, w, r));
  else if (g.format == "json") {
    Json o = encode(r.value);
    o["deck_index"] = r.deck ? encode(*r.deck) : Json(nullptr);
    emit(g, versioned(o).dump(2) + "\n");
  } else {
    std::string s = "value  " + csv_number(r.value.value) + "\nmethod " + to_string(r.value.method) + "\ngap    " +
                    csv_number(r.value.gap) + "\n";
    if (r.deck) s += "deck   " + csv_deck(r.deck) + "\n";
    emit(g, s);
  }
  return 0;
}

// --- audit ------------------------------------------------------------------------------------------------------------

int cmd_audit(const Globals& g, bool tol_given) {
  check_format(g);
  Json cfg = g.config.empty() ? Json::object() : read_config(g.config);
  if (!cfg.is_object()) fail(ErrorCode::Schema, "audit config must be an object");
  if (!g.map.empty()) cfg["map"] = descriptor(g.map);
  if (!g.family.empty()) cfg["family"] = descriptor(g.family);
  const HolomorphicMap F = decode_map(detail::field(cfg, "map"));
  const FamilyDescriptor fd = decode_family(detail::field(cfg, "family"));
  const GeodesicFamily fam = fd.build();

  AuditOptions opt;
  ExampleOptions eo;
  std::uint64_t seed = g.seed;
  bool completeness = true, injectivity = true;
  std::string expectation = "isometric-along-family";
  detail::guarded([&] {
    if (cfg.contains("tolerances")) {
      const Json& t = cfg["tolerances"];
      if (t.contains("tol")) opt.tol = detail::number(t["tol"], "tol");
      if (t.contains("sandwich_slack")) opt.sandwich_slack = detail::number(t["sandwich_slack"], "sandwich_slack");
      if (t.contains("coverage")) eo.coverage_tol = detail::number(t["coverage"], "coverage");
    }
    if (cfg.contains("samples")) opt.samples = static_cast<int>(detail::integer(cfg["samples"], "samples"));
    if (cfg.contains("horizon")) opt.horizon = detail::number(cfg["horizon"], "horizon");
    if (cfg.contains("grid")) eo.grid = static_cast<int>(detail::integer(cfg["grid"], "grid"));
    if (cfg.contains("seed") && g.seed == 0) seed = static_cast<std::uint64_t>(detail::integer(cfg["seed"], "seed"));
    if (cfg.contains("completeness")) completeness = detail::boolean(cfg["completeness"], "completeness");
    if (cfg.contains("injectivity")) injectivity = detail::boolean(cfg["injectivity"], "injectivity");
    if (cfg.contains("expectation")) expectation = detail::text(cfg["expectation"], "expectation");
    return 0;
  });
  if (tol_given) opt.tol = g.tol;
  if (expectation != "isometric-along-family" && expectation != "violated")
    fail(ErrorCode::Schema, "expectation must be isometric-along-family or violated");
  if (opt.samples < 2 || eo.grid < 1) fail(ErrorCode::Schema, "samples >= 2 and grid >= 1 required");

  IsometryReport rep = audit_isometry(F, fam, opt);
  if (completeness) rep.completeness = completeness_check(fam, interior_grid(fam.domain, eo.grid, seed), eo.coverage_tol);
  if (injectivity) rep.injectivity = injectivity_probe(F, collision_grid(F, 16, seed));

  const bool ok = expectation == to_string(rep.verdict);
  if (g.format == "json") {
    Json body = encode(rep);
    body["expectation"] = expectation;
    body["expectation_met"] = ok;
    emit(g, versioned(body).dump(2) + "\n");
  } else if (g.format == "csv") {
    std::string s = "id,max_deviation,max_gap,tolerance,comparisons,pass\n";
    for (const auto& d : rep.per_geodesic)
      s += d.id + "," + csv_number(d.max_deviation) + "," + csv_number(d.max_gap) + "," + csv_number(d.tolerance) + "," +
           std::to_string(d.comparisons) + "," + (d.pass() ? "true" : "false") + "\n";
    emit(g, s);
  } else {
    std::ostringstream os;
    write_report_text(os, rep);
    os << "expectation " << expectation << (ok ? "  met\n" : "  NOT met\n");
    emit(g, os.str());
  }
  return ok ? 0 : 1;
}

// --- paper-examples ---------------------------------------------------------------------------------------------------

int cmd_examples(const Globals& g, const std::string& only, int n, double R) {
  check_format(g);
  ExampleOptions eo;
  eo.n = n;
  eo.R = R;
  eo.seed = g.seed;
  eo.audit.tol = g.tol;
  std::vector<std::string> names;
  if (only.empty()) names = example_names();
  else names.push_back(only);

  std::vector<ExampleBundle> bundles;
  for (const auto& name : names) bundles.push_back(reproduce_example(name, eo));

  const ExampleBundle* failed = nullptr;
  for (const auto& b : bundles)
    if (!failed && !b.pass()) failed = &b;

  if (g.format == "json") {
    Json arr = Json::array();
    for (const auto& b : bundles) arr.push_back(encode(b));
    emit(g, versioned({{"seed", g.seed}, {"pass", failed == nullptr}, {"examples", arr}}).dump(2) + "\n");
  } else if (g.format == "csv") {
    std::string s = "example,assertion,pass,detail\n";
    for (const auto& b : bundles)
      for (const auto& a : b.assertions) s += b.name + "," + a.name + "," + (a.pass ? "true" : "false") + ",\"" + a.detail + "\"\n";
    emit(g, s);
  } else {
    std::ostringstream os;
    os << std::left << std::setw(16) << "example" << std::setw(8) << "result" << std::right << std::setw(14)
       << "max_dev" << std::setw(12) << "coverage" << std::setw(14) << "multiplicity" << std::setw(10) << "proper"
       << "\n";
    for (const auto& b : bundles) {
      const auto& c = *b.report.completeness;
      os << std::left << std::setw(16) << b.name << std::setw(8) << (b.pass() ? "PASS" : "FAIL") << std::right
         << std::setw(14) << sci(b.report.max_deviation()) << std::setw(12)
         << (std::to_string(c.covered) + "/" + std::to_string(c.grid_size)) << std::setw(14)
         << (b.multiplicity ? std::to_string(*b.multiplicity) : std::string("-")) << std::setw(10)
         << (b.properness.proper_compatible ? "yes" : "no") << "\n";
    }
    os << "\n";
    for (const auto& b : bundles) write_bundle_text(os, b);
    emit(g, os.str());
  }
  if (failed) {
    for (const auto& a : failed->assertions)
      if (!a.pass) {
        std::cerr << "kobalab: " << failed->name << ": assertion '" << a.name << "' failed (" << a.detail << ")\n";
        break;
      }
    return 1;
  }
  return 0;
}

// --- geodesic ---------------------------------------------------------------------------------------------------------

int cmd_geodesic(const Globals& g, const std::string& spec, int member, int samples, double horizon) {
  check_format(g);
  auto pick = [&]() -> GeodesicCurve {
    if (!spec.empty()) return decode_geodesic(descriptor(spec));
    if (g.family.empty()) fail(ErrorCode::Schema, "geodesic needs --spec or --family");
    const GeodesicFamily fam = decode_family(descriptor(g.family)).build();
    if (member < 0 || member >= static_cast<int>(fam.members.size())) fail(ErrorCode::Schema, "member index out of range");
    return fam.members[static_cast<std::size_t>(member)];
  };
  const GeodesicCurve c = pick();
  if (samples < 1) fail(ErrorCode::Schema, "samples must be positive");
  const auto ts = sample_parameters(c.interval, samples, horizon);
  if (g.format == "json") {
    Json pts = Json::array();
    for (double t : ts) pts.push_back({{"t", t}, {"z", encode(c(t))}});
    emit(g, versioned({{"id", c.id},
                       {"domain", encode(c.domain)},
                       {"interval", {{"kind", to_string(c.interval.kind)}, {"a", detail::num(c.interval.a)}, {"b", detail::num(c.interval.b)}}},
                       {"parametrization", to_string(c.parametrization)},
                       {"samples", pts}})
                .dump(2) +
            "\n");
  } else {
    // text and csv coincide: the sample table is the plotting interface.
    std::ostringstream os;
    write_geodesic_csv(os, c, ts);
    emit(g, os.str());
  }
  return 0;
}

// --- probe ------------------------------------------------------------------------------------------------------------

struct ProbeArgs {
  std::string kind = "metric";
  double eps = 0.05;
  std::vector<double> ts{0.5, 0.9, 0.99};
  int N = 2;
  double r0 = 0.5;
  int points = 12;
  double window = 5.0;
  std::string w0 = "0.2,0.1i";
};

int cmd_probe(const Globals& g, const ProbeArgs& a) {
  check_format(g);
  if (a.kind == "divergence") {
    // Seeds A_t(t e_N): pulled back they run out to the sphere.
    std::vector<ComplexPoint> seeds;
    for (double t : a.ts) {
      ComplexPoint p(a.N);
      p[a.N - 1] = t;
      seeds.push_back(scaling_automorphism(ScalingParameter(t), p));
    }
    const DivergenceReport r = compactly_divergent_probe(a.ts, seeds);
    if (g.format == "json") emit(g, versioned(encode(r)).dump(2) + "\n");
    else {
      std::string s = "t,re_pi1,norm,band\n";
      for (const auto& row : r.rows)
        s += csv_number(row.t) + "," + csv_number(row.re_pi1) + "," + csv_number(row.norm) + "," +
             (row.band ? "true" : "false") + "\n";
      if (g.format == "text") s += std::string("# divergent ") + (r.divergent ? "true" : "false") + "\n";
      emit(g, s);
    }
    return 0;
  }
  ConvergenceTable tab;
  if (a.kind == "metric") tab = metric_convergence_probe(a.eps, a.ts, scaling_grid(a.N, a.r0, a.points));
  else if (a.kind == "persistence") tab = geodesic_persistence_probe(a.eps, a.ts, parse_point(a.w0), a.window);
  else fail(ErrorCode::Schema, "probe kind must be metric, persistence or divergence");
  if (g.format == "json") emit(g, versioned(encode(tab)).dump(2) + "\n");
  else {
    std::ostringstream os;
    write_convergence_csv(os, tab);
    if (g.format == "text")
      os << "# max_deviation " << csv_number(tab.max_deviation()) << " monotone "
         << (tab.monotone(kPersistenceNoise) ? "true" : "false") << "\n";
    emit(g, os.str());
  }
  return 0;
}

// --- preimages --------------------------------------------------------------------------------------------------------

int cmd_preimages(const Globals& g, const std::string& matrix, const std::string& w) {
  check_format(g);
  const IntegerMatrix A = decode_matrix(descriptor(matrix));
  const ComplexPoint p = parse_point(w);
  const auto pre = monomial_preimages(A, p);
  if (g.format == "json") {
    Json arr = Json::array();
    for (const auto& z : pre) arr.push_back(encode(z));
    emit(g, versioned({{"A", encode(A)}, {"w", encode(p)}, {"det", A.det()}, {"preimages", arr}}).dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_points_csv(os, pre);
    emit(g, os.str());
  }
  return 0;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotInterior:
    case ErrorCode::ZeroCoordinate: return 3;
    case ErrorCode::Schema:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::SingularMatrix:
    case ErrorCode::Degenerate:
    case ErrorCode::Unsupported: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kobalab: Kobayashi geometry on model domains"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "csv | json | text");
  app.add_option("--seed", g.seed, "quasi-random seed");
  auto* tol_opt = app.add_option("--tol", g.tol, "isometry tolerance");
  app.add_option("--config", g.config, "JSON config (audit) or batch list (dist)");
  app.add_option("--domain", g.domain, "domain: kind name, inline JSON or @file");
  app.add_option("--map", g.map, "map descriptor: inline JSON or @file");
  app.add_option("--family", g.family, "family descriptor: inline JSON or @file");

  DistArgs da;
  auto* dist = app.add_subcommand("dist", "Kobayashi distance between two points");
  dist->add_option("--z", da.z, "first point, e.g. 0.5 or 0.1+0.2i,0.3");
  dist->add_option("--w", da.w, "second point");
  dist->add_option("--R", da.R, "annulus / strip parameter");
  dist->add_option("--N", da.N, "dimension for ball-like kinds");
  dist->add_option("--eps", da.eps, "scaled-ellipsoid perturbation");
  dist->add_option("--t", da.t, "scaled-ellipsoid scaling parameter");

  auto* audit = app.add_subcommand("audit", "audit a map for isometry along a geodesic family");

  std::string only;
  int n = 2;
  double R = 4.0;
  auto* examples = app.add_subcommand("paper-examples", "reproduce the power, exp and monomial examples");
  examples->add_option("--only", only, "power-disc | exp-annulus | monomial-tube");
  examples->add_option("--n", n, "power / dimension");
  examples->add_option("--R", R, "annulus parameter");

  std::string spec;
  int member = 0, samples = 64;
  double horizon = 6.0;
  auto* geo = app.add_subcommand("geodesic", "export geodesic samples as CSV");
  geo->add_option("--spec", spec, "geodesic descriptor: inline JSON or @file");
  geo->add_option("--member", member, "member index when --family is used");
  geo->add_option("--samples", samples, "number of sample parameters");
  geo->add_option("--horizon", horizon, "window length on rays and lines");

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe", "scaling probes: metric, persistence, divergence");
  probe->add_option("--kind", pa.kind, "metric | persistence | divergence");
  probe->add_option("--eps", pa.eps, "ellipsoid perturbation");
  probe->add_option("--ts", pa.ts, "increasing scaling parameters")->delimiter(',');
  probe->add_option("--N", pa.N, "dimension");
  probe->add_option("--r0", pa.r0, "grid radius (metric)");
  probe->add_option("--points", pa.points, "grid points (metric)");
  probe->add_option("--window", pa.window, "parameter window (persistence)");
  probe->add_option("--w0", pa.w0, "start point (persistence)");

  std::string matrix, target;
  auto* pre = app.add_subcommand("preimages", "preimages of a point under a monomial map");
  pre->add_option("--matrix", matrix, "integer rows as JSON, e.g. [[2,0],[0,2]]")->required();
  pre->add_option("--w", target, "target point")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*dist) return cmd_dist(g, da);
    if (*audit) return cmd_audit(g, tol_opt->count() > 0);
    if (*examples) return cmd_examples(g, only, n, R);
    if (*geo) return cmd_geodesic(g, spec, member, samples, horizon);
    if (*probe) return cmd_probe(g, pa);
    if (*pre) return cmd_preimages(g, matrix, target);
  } catch (const Error& e) {
    std::cerr << "kobalab: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "kobalab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
