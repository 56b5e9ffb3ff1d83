#include "fillings/probability.hpp"

#include "fillings/errors.hpp"

namespace fillings {
namespace {

Rational power(const Rational& base, int exponent) {
  Rational result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

std::string_view to_string(Convention convention) {
  return convention == Convention::kPaperDet ? "paper-det" : "volume";
}

Convention parse_convention(std::string_view text) {
  if (text == "paper-det") return Convention::kPaperDet;
  if (text == "volume") return Convention::kVolume;
  throw DomainError("unknown convention '" + std::string(text) + "'");
}

std::vector<TopologyReport> topology_probabilities(int n, Convention convention, int max_leaves) {
  if (n < 3 || n > max_leaves) {
    throw DomainError("n must be in 3.." + std::to_string(max_leaves) + ", got " +
                      std::to_string(n));
  }
  const Integer n_factorial = factorial(n);
  const Integer m_factorial = factorial(2 * n - 3);

  std::vector<TopologyReport> reports;
  Rational det_weight_total = 0;
  HighPrecision volume_total = 0;
  for (TopologyClass& cls : enumerate_topology_classes(n)) {
    const Rational multiplicity(n_factorial, Integer(cls.simm));
    TopologyReport report{std::move(cls)};
    report.convention = convention;
    report.volume = simplex_volume(report.topology_class.representative);
    report.paper_weight = report.det() * multiplicity;
    report.volume_multiplier = multiplicity / Rational(m_factorial);
    det_weight_total += report.paper_weight;
    volume_total += to_high_precision(report.volume_multiplier) *
                    boost::multiprecision::sqrt(to_high_precision(report.det()));
    reports.push_back(std::move(report));
  }

  for (TopologyReport& report : reports) {
    if (convention == Convention::kPaperDet) {
      report.exact_probability = report.paper_weight / det_weight_total;
      report.probability = to_high_precision(*report.exact_probability);
    } else {
      report.probability = to_high_precision(report.volume_multiplier) *
                           boost::multiprecision::sqrt(to_high_precision(report.det())) /
                           volume_total;
    }
  }
  return reports;
}

SurdValue probability_ratio(const Topology& first, const Topology& second, Convention convention) {
  if (first.leaf_count() != second.leaf_count()) {
    throw DomainError("probability ratio needs topologies with the same number of leaves");
  }
  const Rational det_ratio = closed_form_determinant(first) / closed_form_determinant(second);
  const Rational symmetry_ratio(Integer(automorphism_order(second)),
                                Integer(automorphism_order(first)));
  SurdValue ratio = convention == Convention::kPaperDet ? SurdValue::from_rational(det_ratio)
                                                        : SurdValue::square_root(det_ratio);
  ratio *= SurdValue::from_rational(symmetry_ratio);
  return ratio;
}

Topology three_mustache_tree(int n, int k) {
  if (n < 6) throw DomainError("three-mustache trees need n >= 6");
  if (k < 2 || k > n - 4) {
    throw DomainError("k must be in 2.." + std::to_string(n - 4) + ", got " + std::to_string(k));
  }
  // Spine vertices v_1..v_{n-3} are n..2n-4, the middle mustache vertex 2n-3.
  auto spine = [n](int i) { return n + i - 1; };
  const Vertex mustache = 2 * n - 3;
  Vertex next_leaf = 0;
  std::vector<Edge> edges;
  edges.push_back({next_leaf++, spine(1)});
  edges.push_back({next_leaf++, spine(1)});
  for (int i = 1; i < n - 3; ++i) edges.push_back({spine(i), spine(i + 1)});
  edges.push_back({next_leaf++, spine(n - 3)});
  edges.push_back({next_leaf++, spine(n - 3)});
  for (int i = 2; i <= n - 4; ++i) {
    if (i == k) {
      edges.push_back({spine(i), mustache});
      edges.push_back({next_leaf++, mustache});
      edges.push_back({next_leaf++, mustache});
    } else {
      edges.push_back({next_leaf++, spine(i)});
    }
  }
  return Topology(n, std::move(edges));
}

Rational three_mustache_symmetric_det(int n) {
  if (n < 6 || n % 2) throw DomainError("the symmetric family needs even n >= 6");
  const Rational fact(factorial(n - 2));
  return power(4, n - 3) * n * n /
         (2 * power(n - 1, 2 * n) * (n - 2) * fact * fact);
}

PathFamilyDeterminant three_mustache_path_det(int n, int k) {
  const Topology tree = three_mustache_tree(n, k);
  const Rational fact(factorial(n - 2));
  const Rational as_printed =
      power(4, n - 2) * (k + 1) * (n - k - 1) / (2 * power(n - 1, 2 * n) * fact * (n - 2));
  return {as_printed, as_printed / fact, closed_form_determinant(tree)};
}

Rational symmetric_to_path_ratio(int n) {
  if (n < 8 || n % 2) throw DomainError("the symmetric-vs-path ratio needs even n >= 8");
  return closed_form_determinant(three_mustache_tree(n, (n - 2) / 2)) /
         closed_form_determinant(three_mustache_tree(n, 2));
}

}  // namespace fillings
