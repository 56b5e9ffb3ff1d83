#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "fillings/embedding.hpp"
#include "fillings/errors.hpp"
#include "fillings/newick.hpp"
#include "fillings/oracle.hpp"

using namespace fillings;

namespace {

const char* const kCaterpillar = "(((1,6),5),((2,3),4));";
const char* const kSnowflake = "((1,2),(3,4),(5,6));";

double relative_error(double approx, const Rational& exact) {
  const double e = to_double(exact);
  return std::abs(approx - e) / e;
}

void expect_within_three_sigma(const SimulationResult& r) {
  const double n = static_cast<double>(r.samples);
  for (std::size_t c = 0; c < r.counts.size(); ++c) {
    const double p = r.analytic[c];
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_LE(std::abs(r.frequencies[c] - p), 3 * sigma + 1e-12)
        << r.class_newick[c] << " freq " << r.frequencies[c] << " analytic " << p;
  }
}

}  // namespace

TEST(FloatDeterminant, MatchesExactValues) {
  EXPECT_NEAR(float_gram_det(parse_newick("(1,2,3);")), 0.0625, 1e-12);
  EXPECT_LT(relative_error(float_gram_det(parse_newick(kCaterpillar)), Rational(4, 2197265625)),
            1e-9);
  EXPECT_LT(relative_error(float_gram_det(parse_newick(kSnowflake)), Rational(1, 488281250)),
            1e-9);
}

TEST(FloatDeterminant, AllClassesUpToNine) {
  for (int n = 3; n <= 9; ++n) {
    for (const auto& cls : enumerate_topology_classes(n)) {
      const Rational exact = exact_determinant(gram_matrix<Rational>(cls.representative));
      EXPECT_LT(relative_error(float_gram_det(cls.representative), exact), 1e-9);
    }
  }
}

TEST(NumericRank, IsFullForEveryClass) {
  for (int n = 3; n <= 9; ++n) {
    for (const auto& cls : enumerate_topology_classes(n)) {
      EXPECT_EQ(numeric_rank(cls.representative), 2 * n - 3);
    }
  }
}

TEST(SimplexSampling, PointsLieOnSimplex) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const VectorX<double> p = sample_simplex_point(9, rng);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(SimplexSampling, ComponentMeansAreUniform) {
  Rng rng(2);
  const int m = 9, draws = 100000;
  VectorX<double> sum = VectorX<double>::Zero(m);
  for (int i = 0; i < draws; ++i) sum += sample_simplex_point(m, rng);
  // Dirichlet(1, ..., 1): each coordinate has variance (m - 1) / (m^2 (m + 1)).
  const double sigma = std::sqrt((m - 1.0) / (m * m * (m + 1.0)) / draws);
  for (int i = 0; i < m; ++i) EXPECT_LE(std::abs(sum(i) / draws - 1.0 / m), 3 * sigma) << i;
}

TEST(SimplexSampling, RationalizedPointsSumToOne) {
  Rng rng(3);
  const Rational grid = Rational(1, Integer(1) << 53);
  for (int trial = 0; trial < 200; ++trial) {
    const VectorX<Rational> p = rationalize_simplex_point(sample_simplex_point(7, rng));
    EXPECT_EQ(p.sum(), 1);
    for (int i = 0; i < p.size(); ++i) {
      EXPECT_GE(p(i), 0);
      EXPECT_EQ(denominator(p(i) / grid), 1);
    }
  }
}

TEST(SimplexSampling, BarycenterWeights) {
  const Topology t = parse_newick(kCaterpillar);
  const int m = t.edge_count();
  const VectorX<Rational> center = VectorX<Rational>::Constant(m, Rational(1, m));
  const WeightDistribution w = weights_at_simplex_point(t, center);
  const auto q = path_counts(t);
  for (int i = 0; i < m; ++i) EXPECT_EQ(w(i), Rational(1, m * q[i]));
  EXPECT_EQ(induced_distances(t, w).norm_l1(), 1);
  EXPECT_THROW(weights_at_simplex_point(t, VectorX<Rational>::Zero(3)), DomainError);
}

TEST(SimplexSampling, SampledImagesHaveUnitNorm) {
  Rng rng(4);
  for (int n = 3; n <= 8; ++n) {
    for (const auto& cls : enumerate_topology_classes(n)) {
      const WeightDistribution w = sample_simplex_weights(cls.representative, rng);
      EXPECT_EQ(induced_distances(cls.representative, w).norm_l1(), 1);
    }
  }
}

TEST(RoundTrip, SixLeafClasses) {
  Rng rng(5);
  for (const char* text : {kCaterpillar, kSnowflake}) {
    const Topology t = parse_newick(text);
    int recovered = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      recovered += round_trip_trial(t, rng) == TrialOutcome::kRecovered ? 1 : 0;
    }
    EXPECT_EQ(recovered, 10000) << text;
  }
}

TEST(RoundTrip, ThreeLeaves) {
  Rng rng(6);
  const Topology t = parse_newick("(1,2,3);");
  for (int trial = 0; trial < 100; ++trial) EXPECT_EQ(round_trip_trial(t, rng), TrialOutcome::kRecovered);
}

TEST(RoundTrip, ZeroInternalEdgeIsDegenerate) {
  const Topology t = parse_newick(kSnowflake);
  Rng rng(7);
  for (EdgeIndex e = 0; e < t.edge_count(); ++e) {
    const Edge& edge = t.edge(e);
    if (t.is_leaf(edge.u) || t.is_leaf(edge.v)) continue;
    WeightDistribution w = sample_simplex_weights(t, rng);
    w(e) = 0;
    EXPECT_EQ(round_trip_weights(t, w), TrialOutcome::kDegenerate);
  }
}

TEST(Simulation, ThreeLeaves) {
  const SimulationResult r = simulate_class_frequencies(3, Convention::kPaperDet, {1, 500, 1e-9});
  ASSERT_EQ(r.counts.size(), 1u);
  EXPECT_EQ(r.counts[0], 500);
  EXPECT_EQ(r.frequencies[0], 1.0);
  EXPECT_EQ(r.round_trip_failures, 0);
}

TEST(Simulation, SixLeafSmallRun) {
  const SimulationResult r = simulate_class_frequencies(6, Convention::kPaperDet, {3, 5000, 1e-9});
  EXPECT_EQ(std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0}), 5000);
  EXPECT_EQ(r.additivity_failures, 0);
  EXPECT_EQ(r.round_trip_failures, 0);
  EXPECT_LT(r.max_det_relative_error, 1e-9);
  EXPECT_NEAR(r.analytic[0], 16.0 / 19.0, 1e-15);
  expect_within_three_sigma(r);
}

TEST(Simulation, SevenLeavesBothConventions) {
  for (Convention c : {Convention::kPaperDet, Convention::kVolume}) {
    const SimulationResult r = simulate_class_frequencies(7, c, {11, 20000, 1e-9});
    EXPECT_EQ(r.counts.size(), 2u);
    EXPECT_EQ(r.additivity_failures, 0);
    EXPECT_EQ(r.round_trip_failures, 0);
    expect_within_three_sigma(r);
  }
}

TEST(Simulation, Reproducible) {
  const OracleConfig config{42, 3000, 1e-9};
  const SimulationResult a = simulate_class_frequencies(6, Convention::kVolume, config);
  const SimulationResult b = simulate_class_frequencies(6, Convention::kVolume, config);
  EXPECT_EQ(a, b);
  const SimulationResult c = simulate_class_frequencies(6, Convention::kVolume, {43, 3000, 1e-9});
  EXPECT_NE(a.counts, c.counts);
}

TEST(Simulation, RejectsBadConfig) {
  EXPECT_THROW(simulate_class_frequencies(6, Convention::kPaperDet, {0, 0, 1e-9}), DomainError);
  EXPECT_THROW(simulate_class_frequencies(10, Convention::kPaperDet, {0, 10, 1e-9}), DomainError);
  EXPECT_THROW(simulate_class_frequencies(2, Convention::kPaperDet, {0, 10, 1e-9}), DomainError);
  EXPECT_THROW(simulate_class_frequencies(6, Convention::kPaperDet, {0, 10, 0}), DomainError);
}
