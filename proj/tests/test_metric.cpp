#include "support.hpp"

using namespace kobalab;

namespace {

// Left half-plane to disc by a -> (a + 1) / (a - 1).
double half_plane_oracle(Complex a, Complex b) { return kt::poincare((a + 1.0) / (a - 1.0), (b + 1.0) / (b - 1.0)); }

// Slab {lo < Re < hi} recentred onto the symmetric strip of half-width (hi - lo) / 2.
double slab_oracle(double lo, double hi, Complex a, Complex b) {
  const double c = 0.5 * (lo + hi);
  return kt::strip_oracle(std::exp(0.5 * (hi - lo)), a - c, b - c);
}

double scan_oracle(const std::function<double(Complex, Complex)>& cover, Complex u, Complex v, long* arg = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for (long nu = -10; nu <= 10; ++nu) {
    const double d = cover(u, v + Complex(0.0, 2.0 * kPi * static_cast<double>(nu)));
    if (d < best) {
      best = d;
      if (arg) *arg = nu;
    }
  }
  return best;
}

const std::vector<ModelDomain>& closed_form_kinds() {
  static const std::vector<ModelDomain> k{
      ModelDomain::unit_disc(),     ModelDomain::punctured_disc(), ModelDomain::annulus(3.0),
      ModelDomain::strip(2.5),      ModelDomain::left_half_plane(), ModelDomain::unit_ball(2),
      ModelDomain::unit_ball(3),    ModelDomain::polydisc(2),
  };
  return k;
}

}  // namespace

TEST(Distance, DiscExamples) {
  EXPECT_EQ(distance(ModelDomain::unit_disc(), ComplexPoint{0.0}, ComplexPoint{0.0}).value, 0.0);
  EXPECT_NEAR(distance(ModelDomain::unit_disc(), ComplexPoint{0.0}, ComplexPoint{0.5}).value, 0.5493061443340548, 1e-15);
}

TEST(Distance, BallAlongLinearSliceIsPoincare) {
  for (double r : {0.1, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
    const DistanceValue d = distance(ModelDomain::unit_ball(2), ComplexPoint(2), ComplexPoint{r, 0.0});
    EXPECT_EQ(d.method, Method::ClosedForm);
    EXPECT_NEAR(d.value, std::atanh(r), 1e-12 * std::max(1.0, std::atanh(r))) << r;
  }
}

TEST(Distance, AnnulusRealPairsReduceToStrip) {
  const double R = 4.0;
  // d(0.5, 2) = asinh(1) through the strip of half-width log 4.
  const DistanceRecord rec = distance_record(ModelDomain::annulus(R), ComplexPoint{0.5}, ComplexPoint{2.0});
  EXPECT_NEAR(rec.value.value, 0.881373587019543, 1e-14);
  ASSERT_TRUE(rec.deck.has_value());
  EXPECT_EQ(rec.deck->nu, std::vector<long>{0});
  kt::for_all(21, 200, [&](kt::Gen& g, int) {
    const double t = std::exp(g.uniform(-0.95, 0.95) * std::log(R)), s = std::exp(g.uniform(-0.95, 0.95) * std::log(R));
    const DistanceRecord r = distance_record(ModelDomain::annulus(R), ComplexPoint{t}, ComplexPoint{s});
    EXPECT_NEAR(r.value.value, kt::strip_oracle(R, std::log(t), std::log(s)), 1e-12);
    EXPECT_EQ(r.deck->nu, std::vector<long>{0});
  });
}

TEST(Distance, AnnulusValueMatchesQuadratureOfTheStripDensity) {
  // Along the real segment of the strip the density is pi / (4 L cos(pi x / (2 L))).
  const double L = std::log(4.0);
  const double len = kt::simpson([&](double x) { return kPi / (4.0 * L * std::cos(kPi * x / (2.0 * L))); }, -std::log(2.0), std::log(2.0));
  EXPECT_NEAR(len, 0.881373587019543, 1e-12);
}

TEST(Distance, StripMatchesExponentialOracle) {
  kt::for_all(22, 300, [&](kt::Gen& g, int) {
    const double R = std::exp(g.uniform(0.2, 2.0));
    const ComplexPoint a = g.strip(R), b = g.strip(R);
    EXPECT_NEAR(distance(ModelDomain::strip(R), a, b).value, kt::strip_oracle(R, a[0], b[0]), 1e-12 * std::max(1.0, kt::strip_oracle(R, a[0], b[0])));
  });
}

TEST(Distance, PolydiscIsMaxOfFactors) {
  kt::for_all(23, 300, [&](kt::Gen& g, int) {
    const ComplexPoint z = g.polydisc(3), w = g.polydisc(3);
    double m = 0.0;
    for (Eigen::Index j = 0; j < 3; ++j) m = std::max(m, kt::poincare(z[j], w[j]));
    EXPECT_NEAR(distance(ModelDomain::polydisc(3), z, w).value, m, 1e-11);
  });
}

TEST(Distance, MetricAxiomsOnClosedFormKinds) {
  for (const auto& d : closed_form_kinds()) {
    SCOPED_TRACE(d.name());
    kt::for_all(24, 300, [&](kt::Gen& g, int) {
      const ComplexPoint x = g.interior(d), y = g.interior(d), z = g.interior(d);
      const double xy = distance(d, x, y).value, yx = distance(d, y, x).value;
      EXPECT_EQ(xy, yx);
      EXPECT_EQ(distance(d, x, x).value, 0.0);
      EXPECT_GE(xy, 0.0);
      EXPECT_LE(distance(d, x, z).value, xy + distance(d, y, z).value + 1e-9);
    });
  }
}

TEST(Distance, NonInteriorPointsRejected) {
  try {
    distance(ModelDomain::unit_disc(), ComplexPoint{0.0}, ComplexPoint{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInterior);
  }
  EXPECT_THROW(distance(ModelDomain::punctured_disc(), ComplexPoint{0.0}, ComplexPoint{0.5}), Error);
}

TEST(DeckInfimum, AgreesWithBruteForceScan) {
  kt::for_all(25, 200, [&](kt::Gen& g, int k) {
    if (k % 2 == 0) {
      const double R = 4.0;
      const ComplexPoint z = g.annulus(R), w = g.annulus(R);
      long arg = 0;
      const double ref = scan_oracle([&](Complex a, Complex b) { return kt::strip_oracle(R, a, b); }, std::log(z[0]),
                                     std::log(w[0]), &arg);
      EXPECT_NEAR(distance(ModelDomain::annulus(R), z, w).value, ref, 1e-12);
    } else {
      const ComplexPoint z = g.punctured(0.05), w = g.punctured(0.05);
      const double ref = scan_oracle(half_plane_oracle, std::log(z[0]), std::log(w[0]));
      EXPECT_NEAR(distance(ModelDomain::punctured_disc(), z, w).value, ref, 1e-12);
    }
  });
}

TEST(DeckInfimum, TranslateByPeriodShiftsMinimizer) {
  const ModelDomain H = ModelDomain::strip(3.0);
  kt::for_all(26, 100, [&](kt::Gen& g, int) {
    const ComplexPoint u = g.strip(3.0, 3.0), v = g.strip(3.0, 3.0);
    const ComplexPoint v1{v[0] + Complex(0.0, 2.0 * kPi)};
    const DeckResult a = deck_infimum(H, u, v), b = deck_infimum(H, u, v1);
    EXPECT_NEAR(a.value.value, b.value.value, 1e-12);
    ASSERT_EQ(b.nu.nu.size(), 1u);
    EXPECT_EQ(b.nu.nu[0], a.nu.nu[0] - 1);
  });
}

TEST(DeckInfimum, IdenticalPointsGiveZero) {
  const ComplexPoint u{Complex(0.1, 0.7)};
  const DeckResult r = deck_infimum(ModelDomain::strip(2.0), u, u);
  EXPECT_EQ(r.value.value, 0.0);
  EXPECT_EQ(r.nu.nu, std::vector<long>{0});
}

TEST(DeckInfimum, RealTubePointsUseTrivialDeck) {
  const ModelDomain T = ModelDomain::tube(ConvexBase::box(real_vector({-1.0, -0.5}), real_vector({0.7, 0.9})));
  kt::for_all(27, 50, [&](kt::Gen& g, int) {
    const ComplexPoint u{g.uniform(-0.9, 0.6), g.uniform(-0.4, 0.8)}, v{g.uniform(-0.9, 0.6), g.uniform(-0.4, 0.8)};
    if (u == v) return;
    EXPECT_EQ(deck_infimum(T, u, v).nu.nu, (std::vector<long>{0, 0}));
  });
}

TEST(DeckInfimum, CoversOnlyStripsHalfPlanesAndTubes) {
  EXPECT_THROW(deck_infimum(ModelDomain::unit_disc(), ComplexPoint{0.0}, ComplexPoint{0.1}), Error);
}

TEST(InfinitesimalMetric, Examples) {
  EXPECT_EQ(infinitesimal_metric(ModelDomain::unit_disc(), ComplexPoint{0.0}, ComplexPoint{1.0}).value, 1.0);
  EXPECT_EQ(infinitesimal_metric(ModelDomain::unit_disc(), ComplexPoint{0.4}, ComplexPoint{0.0}).value, 0.0);
}

TEST(InfinitesimalMetric, CoveredKindsMatchFiniteDifferenceOfDistance) {
  const double h = 1e-6;
  kt::for_all(28, 60, [&](kt::Gen& g, int k) {
    const ModelDomain d = k % 2 ? ModelDomain::punctured_disc() : ModelDomain::annulus(3.0);
    const ComplexPoint z = k % 2 ? ComplexPoint{g.uniform(0.05, 0.9)} : g.annulus(3.0);
    const ComplexPoint v{std::polar(1.0, g.angle())};
    const double fd = (distance(d, z, z + h * v).value + distance(d, z, z - h * v).value) / (2.0 * h);
    EXPECT_NEAR(infinitesimal_metric(d, z, v).value, fd, 1e-5 * std::max(1.0, fd));
  });
}

TEST(InfinitesimalMetric, BallMetricIsHomogeneous) {
  kt::for_all(29, 200, [&](kt::Gen& g, int) {
    const ComplexPoint z = g.ball(3), v = g.ball(3, 2.0);
    const Complex c = std::polar(g.uniform(0.1, 3.0), g.angle());
    const double a = infinitesimal_metric(ModelDomain::unit_ball(3), z, c * v).value;
    EXPECT_NEAR(a, std::abs(c) * infinitesimal_metric(ModelDomain::unit_ball(3), z, v).value, 1e-12 * std::max(1.0, a));
  });
}

TEST(HyperbolicLength, ConstantCurveHasZeroLength) {
  const CurveSampler c = [](double) { return ComplexPoint{0.3, Complex(0.0, 0.2)}; };
  EXPECT_EQ(hyperbolic_length(ModelDomain::unit_ball(2), c, 0.0, 2.0).value, 0.0);
}

TEST(HyperbolicLength, RadialDiscSegment) {
  const CurveSampler c = [](double u) { return ComplexPoint{u}; };
  EXPECT_NEAR(hyperbolic_length(ModelDomain::unit_disc(), c, 0.0, 0.5).value, std::atanh(0.5), 1e-8);
}

TEST(HyperbolicLength, InvariantUnderMonotoneReparametrization) {
  const ComplexPoint a{0.1, Complex(-0.2, 0.3)}, b{Complex(0.4, 0.1), -0.3};
  const CurveSampler line = [&](double u) { return (1.0 - u) * a + u * b; };
  const CurveSampler slow = [&](double s) { return line(s * s * (3.0 - 2.0 * s)); };
  const ModelDomain B = ModelDomain::unit_ball(2);
  const double l1 = hyperbolic_length(B, line, 0.0, 1.0).value;
  const double l2 = hyperbolic_length(B, slow, 0.0, 1.0).value;
  EXPECT_NEAR(l1, l2, 1e-7);
  EXPECT_GE(l1, distance(B, a, b).value - 1e-9);
}

TEST(Sandwich, IdenticalPointsGiveZero) {
  const ConvexBase b = ConvexBase::unit_ball(2);
  const ComplexPoint u{Complex(0.1, 2.0), Complex(-0.2, 0.0)};
  EXPECT_EQ(caratheodory_lower(b, u, u), 0.0);
  EXPECT_EQ(lempert_upper(b, u, u), 0.0);
}

TEST(Sandwich, BallBaseRealPairAlongAxis) {
  // The supporting slab with normal e1 is the extremal one here.
  const ConvexBase b = ConvexBase::unit_ball(2);
  const ComplexPoint u{-0.5, 0.0}, v{0.5, 0.0};
  const double strip = kt::strip_oracle(std::exp(1.0), -0.5, 0.5);
  EXPECT_NEAR(caratheodory_lower(b, u, v), strip, 1e-9);
  EXPECT_NEAR(lempert_upper(b, u, v), strip, 1e-6);
}

TEST(Sandwich, BoxBaseIsProductOfStrips) {
  const RealVector lo = real_vector({-1.0, -2.0}), hi = real_vector({1.0, 0.5});
  const ConvexBase b = ConvexBase::box(lo, hi);
  kt::for_all(30, 100, [&](kt::Gen& g, int) {
    ComplexPoint u(2), v(2);
    for (Eigen::Index j = 0; j < 2; ++j) {
      u[j] = Complex(g.uniform(lo[j], hi[j]), g.uniform(-2, 2));
      v[j] = Complex(g.uniform(lo[j], hi[j]), g.uniform(-2, 2));
    }
    double ref = 0.0;
    for (Eigen::Index j = 0; j < 2; ++j) ref = std::max(ref, slab_oracle(lo[j], hi[j], u[j], v[j]));
    EXPECT_NEAR(lempert_upper(b, u, v), ref, 1e-9);
    EXPECT_NEAR(caratheodory_lower(b, u, v), ref, 1e-9);
  });
}

TEST(Sandwich, LowerNeverExceedsUpper) {
  const std::vector<ConvexBase> bases{
      ConvexBase::unit_ball(2),
      ConvexBase::ball(real_vector({0.3, -0.1}), 0.6),
      ConvexBase::polytope({{real_vector({1, 1}), 1.0}, {real_vector({-1, 0}), 0.5}, {real_vector({0, -1}), 0.5}}),
  };
  kt::for_all(31, 24, [&](kt::Gen& g, int k) {
    const ConvexBase& b = bases[static_cast<std::size_t>(k) % bases.size()];
    const RealVector c = b.interior_point();
    auto pick = [&] {
      ComplexPoint p(2);
      for (;;) {
        const RealVector x = c + g.in_ball(2, 0.8);
        if (b.boundary_distance(x) > 0.05) return ComplexPoint::from_parts(x, real_vector({g.uniform(-1, 1), g.uniform(-1, 1)}));
      }
    };
    const ComplexPoint u = pick(), v = pick();
    EXPECT_LE(caratheodory_lower(b, u, v), lempert_upper(b, u, v) + 1e-12);
  });
}

TEST(TubeDistance, RealPairInBallTubeHasSmallGap) {
  const ModelDomain T = ModelDomain::tube(ConvexBase::unit_ball(2));
  const DistanceValue d = distance(T, ComplexPoint{-0.5, 0.5}, ComplexPoint{0.5, 0.5});
  EXPECT_EQ(d.method, Method::Sandwich);
  EXPECT_LT(d.gap, 1e-3);
  // Regression bracket, frozen from a run with the default direction count.
  EXPECT_GE(d.upper(), 1.021719005185 - 1e-9);
  EXPECT_LE(d.lower(), 1.021719005291 + 1e-9);
  // Certified from below by the e1 slab.
  EXPECT_GE(d.upper(), slab_oracle(-1.0, 1.0, -0.5, 0.5) - 1e-12);
}

TEST(TubeDistance, GapAboveToleranceRaises) {
  MetricOptions opt;
  opt.gap_tolerance = 0.0;
  opt.tube.refine = false;
  try {
    distance(ModelDomain::tube(ConvexBase::unit_ball(2)), ComplexPoint{Complex(0.1, 0.3), 0.2},
             ComplexPoint{Complex(-0.4, -0.5), Complex(0.3, 1.0)}, opt);
    FAIL() << "expected a gap error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GapExceeded);
  }
}

TEST(ReinhardtDistance, RealPointsEqualTubeDistanceOfLogs) {
  const ConvexBase b = ConvexBase::unit_ball(2);
  const ModelDomain D = ModelDomain::reinhardt(b);
  const RealVector x = real_vector({-0.3, 0.4}), y = real_vector({0.5, -0.1});
  const DistanceRecord r = distance_record(D, ComplexPoint::real(RealVector(x.array().exp())),
                                           ComplexPoint::real(RealVector(y.array().exp())));
  const Bracket t = tube_bracket(b, ComplexPoint::real(x), ComplexPoint::real(y));
  EXPECT_LE(r.value.lower(), t.upper + 1e-12);
  EXPECT_GE(r.value.upper(), t.lower - 1e-12);
  EXPECT_EQ(r.deck->nu, (std::vector<long>{0, 0}));
}

TEST(ReinhardtDistance, ComplexPairRegression) {
  const ModelDomain D = ModelDomain::reinhardt(ConvexBase::unit_ball(2));
  const ComplexPoint z{std::exp(0.3), Complex(0.0, std::exp(0.1))}, w{std::exp(-0.2), std::exp(0.4)};
  const DistanceValue d = distance(D, z, w);
  EXPECT_EQ(d.method, Method::DeckInfimum);
  EXPECT_NEAR(d.value, 1.378564627358, 1e-3);
  EXPECT_LT(d.gap, 1e-3);
}

TEST(ScaledEllipsoidDistance, UnperturbedCaseIsBallDistance) {
  kt::for_all(32, 100, [&](kt::Gen& g, int) {
    const ModelDomain om = ModelDomain::scaled_ellipsoid(2, 0.0, g.uniform(0.0, 0.99));
    const ComplexPoint z = g.ball(2, 0.6), w = g.ball(2, 0.6);
    const DistanceValue d = distance(om, z, w);
    EXPECT_EQ(d.gap, 0.0);
    EXPECT_NEAR(d.value, ball_distance(z, w), 1e-15);
  });
}
