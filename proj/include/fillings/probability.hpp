#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fillings/determinant.hpp"
#include "fillings/rational.hpp"
#include "fillings/topology.hpp"

namespace fillings {

/// How a topology's simplex contributes to the measure.
enum class Convention {
  /// Proportional to det Q.
  kPaperDet,
  /// Proportional to the simplex volume sqrt(det Q) / m!.
  kVolume,
};

std::string_view to_string(Convention convention);
/// Accepts "paper-det" and "volume".
Convention parse_convention(std::string_view text);

constexpr int kDefaultMaxLeaves = 10;

struct TopologyReport {
  TopologyClass topology_class;
  Convention convention = Convention::kPaperDet;
  VolumeValue volume;           // det and m
  Rational paper_weight;        // det * n! / simm
  Rational volume_multiplier;   // n! / (simm * m!); volume weight = multiplier * sqrt(det)
  /// Exact under kPaperDet, absent under kVolume.
  std::optional<Rational> exact_probability;
  HighPrecision probability;

  const Rational& det() const { return volume.det; }
};

/// One report per topology class, in class enumeration order, with
/// probabilities normalized over all classes.
std::vector<TopologyReport> topology_probabilities(int n, Convention convention,
                                                   int max_leaves = kDefaultMaxLeaves);

/// P(t1) / P(t2) = (w(t1) / w(t2)) * (simm(t2) / simm(t1)), with w = det or
/// sqrt(det). Throws DomainError for different leaf counts.
SurdValue probability_ratio(const Topology& first, const Topology& second, Convention convention);

/// Caterpillar with three mustaches: two at the ends of the spine and one
/// hanging from the vertex between the k-th and (k+1)-th edges of the path
/// joining the end mustaches; every other spine vertex carries one leaf.
/// Requires 2 <= k <= n - 4.
Topology three_mustache_tree(int n, int k);

/// Published closed form 4^(n-3) n^2 / (2 (n-1)^(2n) (n-2) ((n-2)!)^2) for
/// the symmetric member k = (n-2)/2. Requires even n >= 6.
Rational three_mustache_symmetric_det(int n);

struct PathFamilyDeterminant {
  Rational as_printed;    // 4^(n-2)(k+1)(n-k-1) / (2 (n-1)^(2n) (n-2)! (n-2))
  Rational squared_factorial;  // same with ((n-2)!)^2 in the denominator
  Rational constructed;   // product formula on three_mustache_tree(n, k)
};

PathFamilyDeterminant three_mustache_path_det(int n, int k);

/// det(symmetric member) / det(k = 2 member), both from the product formula
/// on constructed trees. Requires even n >= 8.
Rational symmetric_to_path_ratio(int n);

}  // namespace fillings
