#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fillings/embedding.hpp"
#include "fillings/probability.hpp"
#include "fillings/topology.hpp"

namespace fillings {

struct OracleConfig {
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  double float_tolerance = 1e-9;  // relative
};

using Rng = std::mt19937_64;

/// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double uniform01(Rng& rng);

/// det(W W^T) in double precision via partial-pivot LU.
double float_gram_det(const Topology& t);

/// Singular values of W above `threshold`.
int numeric_rank(const Topology& t, double threshold = 1e-8);

/// Point of the standard simplex, uniform via normalized exponential
/// spacings (Dirichlet(1, ..., 1)).
VectorX<double> sample_simplex_point(int dimension, Rng& rng);

/// Rounds to multiples of 2^-53 and fixes the largest coordinate so the
/// coordinates sum to exactly 1.
VectorX<Rational> rationalize_simplex_point(const VectorX<double>& point);

/// sum_i point_i * w^i: weight point_i / q_i on edge i.
WeightDistribution weights_at_simplex_point(const Topology& t, const VectorX<Rational>& point);

/// Uniform simplex sample, rationalized; its image has norm exactly 1.
WeightDistribution sample_simplex_weights(const Topology& t, Rng& rng);

enum class TrialOutcome {
  kRecovered,   // label-isomorphic topology and identical weights
  kDegenerate,  // some weight is zero; reconstruction realized the matrix
  kFailed,
};

/// Forward map, reconstruction, and comparison for fixed weights.
TrialOutcome round_trip_weights(const Topology& t, const WeightDistribution& weights);

TrialOutcome round_trip_trial(const Topology& t, Rng& rng);

struct SimulationResult {
  int n = 0;
  Convention convention = Convention::kPaperDet;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::vector<std::string> class_newick;
  std::vector<std::int64_t> counts;
  std::vector<double> frequencies;
  std::vector<double> analytic;
  double chi_square = 0;
  std::int64_t additivity_failures = 0;
  std::int64_t round_trip_failures = 0;
  std::int64_t degenerate_samples = 0;
  double max_det_relative_error = 0;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Draws labeled topologies in proportion to their per-tree measure (from
/// floating determinants), samples a simplex point for each, and counts the
/// class of the tree reconstructed from the resulting distance matrix.
/// Samples are split into fixed chunks with per-chunk seeds, so the result
/// does not depend on the number of worker threads.
SimulationResult simulate_class_frequencies(int n, Convention convention,
                                            const OracleConfig& config);

}  // namespace fillings
