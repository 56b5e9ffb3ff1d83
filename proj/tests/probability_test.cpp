#include <map>

#include <gtest/gtest.h>

#include "fillings/embedding.hpp"
#include "fillings/errors.hpp"
#include "fillings/newick.hpp"
#include "fillings/probability.hpp"

using namespace fillings;

namespace {

const char* const kCaterpillar = "(((1,6),5),((2,3),4));";
const char* const kSnowflake = "((1,2),(3,4),(5,6));";

Rational gram_det(const Topology& t) { return exact_determinant(gram_matrix<Rational>(t)); }

}  // namespace

TEST(Convention, ParseAndPrint) {
  EXPECT_EQ(parse_convention("paper-det"), Convention::kPaperDet);
  EXPECT_EQ(parse_convention("volume"), Convention::kVolume);
  EXPECT_EQ(to_string(Convention::kVolume), "volume");
  EXPECT_EQ(to_string(Convention::kPaperDet), "paper-det");
  EXPECT_THROW(parse_convention("sqrt"), DomainError);
}

TEST(Probabilities, SixLeafPaperDet) {
  const auto reports = topology_probabilities(6, Convention::kPaperDet);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].det(), Rational(4, 2197265625));
  EXPECT_EQ(reports[0].topology_class.simm, 8u);
  EXPECT_EQ(*reports[0].exact_probability, Rational(16, 19));
  EXPECT_EQ(reports[1].det(), Rational(1, 488281250));
  EXPECT_EQ(reports[1].topology_class.simm, 48u);
  EXPECT_EQ(*reports[1].exact_probability, Rational(3, 19));
  EXPECT_EQ(reports[0].paper_weight, reports[0].det() * 90);
  EXPECT_EQ(reports[0].volume.dimension, 9);
}

TEST(Probabilities, ThreeLeavesIsCertain) {
  for (Convention c : {Convention::kPaperDet, Convention::kVolume}) {
    const auto reports = topology_probabilities(3, c);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_EQ(format_decimal(reports[0].probability, 30), "1");
  }
}

TEST(Probabilities, SixLeafVolume) {
  const auto reports = topology_probabilities(6, Convention::kVolume);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_FALSE(reports[0].exact_probability.has_value());
  const HighPrecision root2 = boost::multiprecision::sqrt(HighPrecision(2));
  const HighPrecision expected = 4 * root2 / (1 + 4 * root2);
  EXPECT_LT(boost::multiprecision::abs(reports[0].probability - expected), HighPrecision("1e-45"));
  EXPECT_LT(boost::multiprecision::abs(reports[1].probability - 1 / (1 + 4 * root2)),
            HighPrecision("1e-45"));
}

TEST(Probabilities, NormalizedForBothConventions) {
  for (int n = 3; n <= 9; ++n) {
    Rational exact_total = 0;
    for (const auto& r : topology_probabilities(n, Convention::kPaperDet)) {
      EXPECT_GT(*r.exact_probability, 0);
      exact_total += *r.exact_probability;
    }
    EXPECT_EQ(exact_total, 1) << n;

    HighPrecision total = 0;
    for (const auto& r : topology_probabilities(n, Convention::kVolume)) {
      EXPECT_GT(r.probability, 0);
      total += r.probability;
    }
    EXPECT_LT(boost::multiprecision::abs(total - 1), HighPrecision("1e-45")) << n;
  }
}

TEST(Probabilities, ClassWeightsCountLabeledTrees) {
  for (int n = 3; n <= 9; ++n) {
    Rational total = 0;
    for (const auto& r : topology_probabilities(n, Convention::kPaperDet)) {
      total += r.paper_weight / r.det();
    }
    EXPECT_EQ(total, Rational(labeled_tree_count(n)));
  }
}

TEST(Probabilities, AgreeWithSumOverLabeledTrees) {
  // Each labeled tree contributes its own determinant; classes collect them.
  for (int n = 4; n <= 8; ++n) {
    const auto reports = topology_probabilities(n, Convention::kPaperDet);
    std::map<std::string, Rational> by_shape;
    Rational total = 0;
    for_each_labeled_topology(n, [&](const Topology& t) {
      const Rational det = closed_form_determinant(t);
      by_shape[shape_encoding(t)] += det;
      total += det;
    });
    for (const auto& r : reports) {
      EXPECT_EQ(*r.exact_probability,
                by_shape.at(shape_encoding(r.topology_class.representative)) / total);
    }
  }
}

TEST(Probabilities, RespectsLeafLimit) {
  EXPECT_THROW(topology_probabilities(2, Convention::kPaperDet), DomainError);
  EXPECT_THROW(topology_probabilities(11, Convention::kPaperDet), DomainError);
  EXPECT_THROW(topology_probabilities(8, Convention::kPaperDet, 7), DomainError);
}

TEST(ProbabilityRatio, SixLeafPair) {
  const Topology cat = parse_newick(kCaterpillar), snow = parse_newick(kSnowflake);
  const SurdValue det_ratio = probability_ratio(cat, snow, Convention::kPaperDet);
  EXPECT_TRUE(det_ratio.is_rational());
  EXPECT_EQ(det_ratio.coefficient, Rational(16, 3));
  EXPECT_EQ(closed_form_determinant(cat) / closed_form_determinant(snow), Rational(8, 9));

  const SurdValue volume = probability_ratio(cat, snow, Convention::kVolume);
  EXPECT_EQ(volume.coefficient, Rational(4));
  EXPECT_EQ(volume.radicand, Rational(2));
}

TEST(ProbabilityRatio, SelfIsOne) {
  const Topology t = parse_newick("(((1,2),3),((4,5),(6,7)));");
  for (Convention c : {Convention::kPaperDet, Convention::kVolume}) {
    const SurdValue r = probability_ratio(t, t, c);
    EXPECT_TRUE(r.is_rational());
    EXPECT_EQ(r.coefficient, 1);
  }
}

TEST(ProbabilityRatio, MatchesNormalizedProbabilities) {
  const auto reports = topology_probabilities(8, Convention::kPaperDet);
  const Topology& a = reports[0].topology_class.representative;
  const Topology& b = reports[2].topology_class.representative;
  EXPECT_EQ(probability_ratio(a, b, Convention::kPaperDet).coefficient,
            *reports[0].exact_probability / *reports[2].exact_probability);
}

TEST(ProbabilityRatio, RejectsDifferentLeafCounts) {
  EXPECT_THROW(probability_ratio(parse_newick("(1,2,3);"), parse_newick("((1,2),(3,4));"),
                                 Convention::kPaperDet),
               DomainError);
}

TEST(ScaleInvariance, NormScalesLinearly) {
  const Topology t = parse_newick(kCaterpillar);
  const Rational lambda(7, 3);
  for (const auto& w : simplex_vertex_weights(t)) {
    const WeightDistribution scaled = lambda * w;
    EXPECT_EQ(induced_distances(t, scaled).norm_l1(), lambda);
  }
  // A scaled simplex has Gram determinant lambda^(2m) det; the ratio of two
  // topologies with equal m is unchanged.
  const Topology snow = parse_newick(kSnowflake);
  const Rational scale(boost::multiprecision::pow(Integer(7), 18), boost::multiprecision::pow(Integer(3), 18));
  const MatrixX<Rational> qa = gram_matrix<Rational>(t) * (lambda * lambda);
  const MatrixX<Rational> qb = gram_matrix<Rational>(snow) * (lambda * lambda);
  EXPECT_EQ(exact_determinant(qa), scale * gram_det(t));
  EXPECT_EQ(exact_determinant(qa) / exact_determinant(qb), gram_det(t) / gram_det(snow));
}

TEST(Family, TreeShape) {
  for (int n = 6; n <= 12; ++n) {
    for (int k = 2; k <= n - 4; ++k) {
      const Topology t = three_mustache_tree(n, k);
      EXPECT_EQ(t.leaf_count(), n);
      EXPECT_EQ(mustache_count(t), 3);
    }
  }
  EXPECT_TRUE(is_isomorphic(three_mustache_tree(6, 2), parse_newick(kSnowflake), false));
  // Mirror positions give the same shape.
  EXPECT_TRUE(is_isomorphic(three_mustache_tree(10, 3), three_mustache_tree(10, 5), false));
  EXPECT_THROW(three_mustache_tree(5, 2), DomainError);
  EXPECT_THROW(three_mustache_tree(8, 1), DomainError);
  EXPECT_THROW(three_mustache_tree(8, 5), DomainError);
}

TEST(Family, SymmetricClosedForm) {
  EXPECT_EQ(three_mustache_symmetric_det(6), Rational(1, 488281250));
  for (int n : {6, 8, 10}) {
    const Topology t = three_mustache_tree(n, (n - 2) / 2);
    EXPECT_EQ(three_mustache_symmetric_det(n), gram_det(t)) << n;
  }
  for (int n : {12, 14, 16}) {
    EXPECT_EQ(three_mustache_symmetric_det(n),
              closed_form_determinant(three_mustache_tree(n, (n - 2) / 2)));
  }
  EXPECT_THROW(three_mustache_symmetric_det(7), DomainError);
  EXPECT_THROW(three_mustache_symmetric_det(4), DomainError);
}

TEST(Family, PathDeterminantReadings) {
  for (int n : {6, 8, 10, 12}) {
    for (int k = 2; k <= n - 4; ++k) {
      const PathFamilyDeterminant det = three_mustache_path_det(n, k);
      EXPECT_EQ(det.squared_factorial, det.constructed) << n << " " << k;
      EXPECT_NE(det.as_printed, det.constructed);
      EXPECT_EQ(det.as_printed / det.constructed, Rational(factorial(n - 2)));
    }
  }
  for (int k = 2; k <= 4; ++k) {
    EXPECT_EQ(three_mustache_path_det(8, k).constructed, gram_det(three_mustache_tree(8, k)));
  }
  EXPECT_THROW(three_mustache_path_det(8, 5), DomainError);
}

TEST(Family, PathRatioLaw) {
  for (int n : {8, 10, 12}) {
    for (int k1 = 2; k1 <= n - 4; ++k1) {
      for (int k2 = 2; k2 <= n - 4; ++k2) {
        const Rational ratio = closed_form_determinant(three_mustache_tree(n, k1)) /
                               closed_form_determinant(three_mustache_tree(n, k2));
        EXPECT_EQ(ratio, Rational((k1 + 1) * (n - k1 - 1), (k2 + 1) * (n - k2 - 1)));
      }
    }
  }
  EXPECT_EQ(closed_form_determinant(three_mustache_tree(10, 2)) /
                closed_form_determinant(three_mustache_tree(10, 4)),
            Rational(21, 25));
}

TEST(Family, SymmetricToPathRatio) {
  EXPECT_EQ(symmetric_to_path_ratio(8), Rational(16, 15));
  EXPECT_EQ(symmetric_to_path_ratio(12), Rational(4, 3));
  Rational previous = 0;
  for (int n = 8; n <= 16; n += 2) {
    const Rational ratio = symmetric_to_path_ratio(n);
    EXPECT_EQ(ratio, Rational(n * n, 12 * (n - 3)));
    EXPECT_GT(ratio, previous);
    previous = ratio;
  }
  EXPECT_THROW(symmetric_to_path_ratio(6), DomainError);
  EXPECT_THROW(symmetric_to_path_ratio(9), DomainError);
}
