#include "support.hpp"

using namespace kobalab;

TEST(Automorphism, Examples) {
  for (double t : {0.0, 0.3, 0.9, 0.999}) {
    const ScalingParameter s(t);
    EXPECT_EQ(scaling_automorphism(s, ComplexPoint(3)), (ComplexPoint{t, 0.0, 0.0}));
    EXPECT_LT(euclid(scaling_automorphism(s, e1(3)), e1(3)), 1e-15);
    EXPECT_LT(euclid(scaling_automorphism(s, -1.0 * e1(3)), -1.0 * e1(3)), 1e-15);
  }
}

TEST(Automorphism, InverseExamples) {
  const ScalingParameter s(0.6);
  EXPECT_LT(norm(scaling_inverse(s, ComplexPoint{0.6, 0.0})), 1e-16);
  EXPECT_LT(euclid(scaling_inverse(s, e1(2)), e1(2)), 1e-15);
}

TEST(Automorphism, RoundTrip) {
  kt::for_all(71, 500, [&](kt::Gen& g, int) {
    const ScalingParameter s(g.uniform(0.0, 0.999));
    const ComplexPoint z = g.ball(3);
    EXPECT_LT(euclid(scaling_inverse(s, scaling_automorphism(s, z)), z), 1e-12);
    EXPECT_LT(euclid(scaling_automorphism(s, scaling_inverse(s, z)), z), 1e-12);
  });
}

TEST(Automorphism, MobiusAdditionOnTheFirstAxis) {
  kt::for_all(72, 300, [&](kt::Gen& g, int) {
    const double t = g.uniform(0.0, 0.99), s = g.uniform(-0.99, 0.99);
    const ComplexPoint w = scaling_automorphism(ScalingParameter(t), s * e1(2));
    EXPECT_NEAR(w[0].real(), (s + t) / (1.0 + t * s), 1e-15);
    EXPECT_EQ(w[0].imag(), 0.0);
    EXPECT_EQ(w[1], Complex(0.0));
  });
}

TEST(Automorphism, PreservesTheBallAndItsDistance) {
  kt::for_all(73, 500, [&](kt::Gen& g, int) {
    const ScalingParameter s(g.uniform(0.0, 0.99));
    const ComplexPoint z = g.ball(2, 0.9), w = g.ball(2, 0.9);
    const ComplexPoint az = scaling_automorphism(s, z), aw = scaling_automorphism(s, w);
    EXPECT_LT(norm(az), 1.0);
    EXPECT_NEAR(ball_distance(az, aw), ball_distance(z, w), 1e-12);
  });
}

TEST(Automorphism, PreservesTheBallMetric) {
  kt::for_all(74, 300, [&](kt::Gen& g, int) {
    const double t = g.uniform(0.0, 0.95);
    const ComplexPoint z = g.ball(2, 0.9), v = g.ball(2, 1.0);
    const double k = ball_metric(z, v);
    EXPECT_NEAR(ball_metric(apply_scaling(t, z), scaling_pushforward(t, z, v)), k, 1e-10 * std::max(1.0, k));
  });
}

TEST(ScaledDomain, MembershipExamples) {
  EXPECT_FALSE(scaled_domain_membership(0.1, ScalingParameter(0.5), e1(2)));
  // rho(A_0.9(0)) = rho((0.9, 0)) = -0.19 + 0.1 * 0.1^4 < 0.
  EXPECT_TRUE(scaled_domain_membership(0.1, ScalingParameter(0.9), ComplexPoint(2)));
}

TEST(ScaledDomain, SandwichRadiiBracketTheDomain) {
  kt::for_all(75, 12, [&](kt::Gen& g, int) {
    const double eps = g.uniform(0.0, 0.2), t = g.uniform(0.0, 0.99);
    const SandwichRadii r = sandwich_radii(eps, ScalingParameter(t), 2);
    EXPECT_EQ(r.r_out, 1.0);
    EXPECT_GT(r.r_in, 0.0);
    EXPECT_LE(r.r_in, 1.0);
    for (int k = 0; k < 200; ++k) {
      const ComplexPoint z = g.ball(2, 1.2);
      if (norm(z) < r.r_in) EXPECT_TRUE(scaled_domain_membership(eps, ScalingParameter(t), z));
      if (norm(z) > r.r_out && std::abs(1.0 + t * z[0]) > 1e-9)
        EXPECT_FALSE(scaled_domain_membership(eps, ScalingParameter(t), z));
    }
  });
}

TEST(ScaledDomain, InscribedRadiusTendsToOne) {
  EXPECT_EQ(sandwich_radii(0.0, ScalingParameter(0.5), 2).r_in, 1.0);
  double prev = 0.0;
  for (double t : {0.0, 0.5, 0.9, 0.99, 0.999}) {
    const double r = sandwich_radii(0.05, ScalingParameter(t), 2).r_in;
    EXPECT_GT(r, prev) << t;
    prev = r;
  }
  EXPECT_GT(prev, 0.999);
}

TEST(ScaledDomain, BoundaryGraphFlattensAlongScaling) {
  EXPECT_LT(boundary_graph_deviation(0.0, ScalingParameter(0.7), 2), 1e-12);
  const double a = boundary_graph_deviation(0.05, ScalingParameter(0.5), 2);
  const double b = boundary_graph_deviation(0.05, ScalingParameter(0.99), 2);
  EXPECT_GT(a, 0.0);
  EXPECT_LT(b, a);
}

TEST(MetricProbe, UnperturbedDomainHasNoDeviation) {
  const ConvergenceTable tab = metric_convergence_probe(0.0, {0.1, 0.5, 0.9, 0.99}, scaling_grid(2));
  ASSERT_EQ(tab.rows.size(), 4u);
  for (const auto& r : tab.rows) EXPECT_EQ(r.deviation, 0.0);
}

TEST(MetricProbe, PerturbedDeviationDecreases) {
  const ConvergenceTable tab = metric_convergence_probe(0.05, {0.5, 0.9, 0.99}, scaling_grid(2, 0.5, 12));
  EXPECT_TRUE(tab.monotone());
  EXPECT_LT(tab.rows.back().deviation, 1e-2);
  EXPECT_GT(tab.rows.front().deviation, tab.rows.back().deviation);
}

TEST(MetricProbe, CoincidentPairHasNoDeviation) {
  const std::vector<std::pair<ComplexPoint, ComplexPoint>> grid{{ComplexPoint(2), ComplexPoint(2)}};
  for (const auto& r : metric_convergence_probe(0.05, {0.5, 0.9}, grid).rows) EXPECT_EQ(r.deviation, 0.0);
}

TEST(MetricProbe, RejectsUnsortedParameters) {
  EXPECT_THROW(metric_convergence_probe(0.05, {0.9, 0.5}, scaling_grid(2)), Error);
}

TEST(ScalingGrid, PairsInsideTheRadius) {
  const auto grid = scaling_grid(2, 0.5, 12);
  EXPECT_EQ(grid.size(), 78u);  // 12 points, unordered pairs with repetition
  EXPECT_EQ(grid.front().first, ComplexPoint(2));
  for (const auto& [z, w] : grid) {
    EXPECT_LE(norm(z), 0.5);
    EXPECT_LE(norm(w), 0.5);
  }
}

TEST(PersistenceProbe, UnperturbedRaysCoincide) {
  const ConvergenceTable tab = geodesic_persistence_probe(0.0, {0.5, 0.9, 0.99}, ComplexPoint{0.0, 0.5});
  EXPECT_LT(tab.max_deviation(), 1e-12);
  EXPECT_TRUE(tab.monotone(kPersistenceNoise));
  for (const auto& r : tab.rows) EXPECT_EQ(r.gap, 0.0);
}

TEST(PersistenceProbe, PerturbedDiagnosticIsNonNegative) {
  for (const auto& r : geodesic_persistence_probe(0.05, {0.5, 0.9}, ComplexPoint{0.2, 0.1}).rows) {
    EXPECT_GE(r.gap, 0.0);
    EXPECT_GE(r.deviation, 0.0);
  }
}

TEST(DivergenceProbe, FixedPointNeverEntersTheBand) {
  const std::vector<double> ts{0.5, 0.9, 0.99};
  const DivergenceReport r = compactly_divergent_probe(ts, std::vector<ComplexPoint>(3, e1(2)));
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.re_pi1, 1.0, 1e-15);
    EXPECT_FALSE(row.band);
  }
}

TEST(DivergenceProbe, RescaledInteriorPointIsNotDivergent) {
  const std::vector<double> ts{0.5, 0.9, 0.99};
  const ComplexPoint x0{0.2, Complex(0.1, -0.3)};
  std::vector<ComplexPoint> seeds;
  for (double t : ts) seeds.push_back(scaling_automorphism(ScalingParameter(t), x0));
  const DivergenceReport r = compactly_divergent_probe(ts, seeds);
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.re_pi1, 0.2, 1e-12);
    EXPECT_TRUE(row.band);
  }
  EXPECT_FALSE(r.divergent);
}

TEST(DivergenceProbe, SeedsRunningToTheSphereAreDivergent) {
  std::vector<double> ts;
  std::vector<ComplexPoint> seeds;
  for (int k = 2; k <= 200; k *= 2) {
    const double t = 1.0 - 1.0 / k;
    ts.push_back(t);
    seeds.push_back(scaling_automorphism(ScalingParameter(t), ComplexPoint{0.0, 1.0 - 1.0 / k}));
  }
  EXPECT_TRUE(compactly_divergent_probe(ts, seeds).divergent);
}
