#pragma once

#include <array>
#include <optional>
#include <utility>

#include "fillings/embedding.hpp"
#include "fillings/topology.hpp"

namespace fillings {

/// Recovers the unique weights realizing `distances` on `t` by peeling
/// leaves: a leaf p hanging at an unpeeled vertex gets weight
/// (d(p,a) + d(p,b) - d(a,b)) / 2 for boundary witnesses a, b in the other
/// two branches, after which the vertex becomes a boundary point with
/// distances d(p, .) - w. Throws NotRealizedError on a negative weight or if
/// the recovered weights do not reproduce the matrix.
WeightDistribution recover_weights(const Topology& t, const DistanceMatrix& distances);

struct AdditivityReport {
  bool is_additive = true;
  /// One-based labels of the first violating quadruple in lexicographic
  /// order; a repeated point marks a triangle-inequality violation.
  std::optional<std::array<int, 4>> witness;
};

/// Four-point condition on every multiset of four points: among
/// d(a,b)+d(c,d), d(a,c)+d(b,d), d(a,d)+d(b,c) the maximum occurs twice.
AdditivityReport check_additivity(const DistanceMatrix& distances);

/// Builds a binary generating tree for an additive matrix. Zero-weight
/// internal edges are contracted and the resulting multifurcations are
/// resolved to the refinement with the smallest canonical Newick string.
/// Throws NonAdditiveError with a witness for non-additive input.
std::pair<Topology, WeightDistribution> reconstruct_topology(const DistanceMatrix& distances);

}  // namespace fillings
