#include "fillings/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>

#include <Eigen/Dense>

#include "fillings/errors.hpp"
#include "fillings/newick.hpp"
#include "fillings/recovery.hpp"

namespace fillings {
namespace {

constexpr std::int64_t kChunkSize = 2048;
constexpr double kTwoPow53 = 9007199254740992.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ChunkTally {
  std::vector<std::int64_t> counts;
  std::int64_t additivity_failures = 0;
  std::int64_t round_trip_failures = 0;
  std::int64_t degenerate = 0;
};

bool same_weights(const Topology& a, const WeightDistribution& wa, const Topology& b,
                  const WeightDistribution& wb) {
  std::unordered_map<std::uint64_t, Rational> by_split;
  const auto splits_a = edge_splits(a);
  for (int i = 0; i < a.edge_count(); ++i) by_split.emplace(splits_a[i], wa(i));
  const auto splits_b = edge_splits(b);
  for (int i = 0; i < b.edge_count(); ++i) {
    auto it = by_split.find(splits_b[i]);
    if (it == by_split.end() || it->second != wb(i)) return false;
  }
  return true;
}

}  // namespace

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) / kTwoPow53; }

double float_gram_det(const Topology& t) {
  const MatrixX<double> w = vertex_vector_matrix<double>(t);
  const MatrixX<double> gram = w * w.transpose();
  return gram.partialPivLu().determinant();
}

int numeric_rank(const Topology& t, double threshold) {
  const MatrixX<double> w = vertex_vector_matrix<double>(t);
  Eigen::JacobiSVD<MatrixX<double>> svd(w);
  const auto& values = svd.singularValues();
  return static_cast<int>((values.array() > threshold).count());
}

VectorX<double> sample_simplex_point(int dimension, Rng& rng) {
  VectorX<double> point(dimension);
  for (int i = 0; i < dimension; ++i) point(i) = -std::log1p(-uniform01(rng));
  return point / point.sum();
}

VectorX<Rational> rationalize_simplex_point(const VectorX<double>& point) {
  const std::int64_t total = std::int64_t{1} << 53;
  std::vector<std::int64_t> scaled(point.size());
  std::int64_t sum = 0;
  for (int i = 0; i < point.size(); ++i) {
    scaled[i] = std::llround(point(i) * kTwoPow53);
    sum += scaled[i];
  }
  const auto largest = std::max_element(scaled.begin(), scaled.end()) - scaled.begin();
  scaled[largest] += total - sum;
  VectorX<Rational> result(point.size());
  for (int i = 0; i < point.size(); ++i) result(i) = Rational(Integer(scaled[i]), Integer(total));
  return result;
}

WeightDistribution weights_at_simplex_point(const Topology& t, const VectorX<Rational>& point) {
  if (point.size() != t.edge_count()) throw DomainError("simplex point has the wrong dimension");
  const auto counts = path_counts(t);
  WeightDistribution weights(t.edge_count());
  for (int i = 0; i < t.edge_count(); ++i) weights(i) = point(i) / counts[i];
  return weights;
}

WeightDistribution sample_simplex_weights(const Topology& t, Rng& rng) {
  return weights_at_simplex_point(
      t, rationalize_simplex_point(sample_simplex_point(t.edge_count(), rng)));
}

TrialOutcome round_trip_weights(const Topology& t, const WeightDistribution& weights) {
  const DistanceMatrix distances = induced_distances(t, weights);
  const auto [topology, recovered] = reconstruct_topology(distances);
  const bool degenerate = (weights.array() == Rational(0)).any();
  if (degenerate) {
    return induced_distances(topology, recovered) == distances ? TrialOutcome::kDegenerate
                                                               : TrialOutcome::kFailed;
  }
  if (!is_isomorphic(topology, t, true)) return TrialOutcome::kFailed;
  return same_weights(t, weights, topology, recovered) ? TrialOutcome::kRecovered
                                                       : TrialOutcome::kFailed;
}

TrialOutcome round_trip_trial(const Topology& t, Rng& rng) {
  return round_trip_weights(t, sample_simplex_weights(t, rng));
}

SimulationResult simulate_class_frequencies(int n, Convention convention,
                                            const OracleConfig& config) {
  if (n < 3 || n > 9) throw DomainError("simulation supports n in 3..9");
  if (config.samples < 1) throw DomainError("samples must be positive");
  if (!(config.float_tolerance > 0)) throw DomainError("float tolerance must be positive");

  const auto reports = topology_probabilities(n, convention);
  const std::size_t class_count = reports.size();

  SimulationResult result;
  result.n = n;
  result.convention = convention;
  result.seed = config.seed;
  result.samples = config.samples;

  std::unordered_map<std::string, std::size_t> class_of_shape;
  std::vector<double> cumulative;
  double running = 0;
  for (std::size_t c = 0; c < class_count; ++c) {
    const Topology& rep = reports[c].topology_class.representative;
    class_of_shape.emplace(shape_encoding(rep), c);
    result.class_newick.push_back(emit_newick(rep));
    result.analytic.push_back(reports[c].probability.convert_to<double>());

    const double det = float_gram_det(rep);
    const double exact = to_double(reports[c].det());
    result.max_det_relative_error =
        std::max(result.max_det_relative_error, std::abs(det - exact) / exact);
    const double per_tree = convention == Convention::kPaperDet ? det : std::sqrt(det);
    running += per_tree * static_cast<double>(reports[c].topology_class.labeled_count);
    cumulative.push_back(running);
  }
  for (double& c : cumulative) c /= running;

  auto run_chunk = [&](std::int64_t chunk) {
    Rng rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(chunk))));
    ChunkTally tally;
    tally.counts.assign(class_count, 0);
    const std::int64_t begin = chunk * kChunkSize;
    const std::int64_t end = std::min(config.samples, begin + kChunkSize);
    std::vector<int> permutation(n);
    for (std::int64_t s = begin; s < end; ++s) {
      const double u = uniform01(rng);
      const std::size_t c = std::min<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin(),
          class_count - 1);
      // Uniform relabeling makes every labeled tree of the class equally likely.
      std::iota(permutation.begin(), permutation.end(), 1);
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform01(rng) * (i + 1));
        std::swap(permutation[i], permutation[std::min(j, i)]);
      }
      const Topology tree = reports[c].topology_class.representative.relabeled(permutation);
      const WeightDistribution weights = sample_simplex_weights(tree, rng);
      const DistanceMatrix distances = induced_distances(tree, weights);

      std::optional<std::pair<Topology, WeightDistribution>> reconstruction;
      try {
        reconstruction = reconstruct_topology(distances);
      } catch (const NonAdditiveError&) {
        ++tally.additivity_failures;
        ++tally.counts[c];
        continue;
      }
      const auto& [recovered, recovered_weights] = *reconstruction;
      if ((weights.array() == Rational(0)).any()) {
        ++tally.degenerate;
      } else if (!is_isomorphic(recovered, tree, true) ||
                 !same_weights(tree, weights, recovered, recovered_weights)) {
        ++tally.round_trip_failures;
      }
      ++tally.counts[class_of_shape.at(shape_encoding(recovered))];
    }
    return tally;
  };

  const std::int64_t chunks = (config.samples + kChunkSize - 1) / kChunkSize;
  const std::int64_t workers =
      std::clamp<std::int64_t>(std::thread::hardware_concurrency(), 1, chunks);
  std::vector<ChunkTally> tallies(chunks);
  std::vector<std::future<void>> pending;
  for (std::int64_t w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::int64_t chunk = w; chunk < chunks; chunk += workers) tallies[chunk] = run_chunk(chunk);
    }));
  }
  for (auto& f : pending) f.get();

  result.counts.assign(class_count, 0);
  for (const ChunkTally& tally : tallies) {
    for (std::size_t c = 0; c < class_count; ++c) result.counts[c] += tally.counts[c];
    result.additivity_failures += tally.additivity_failures;
    result.round_trip_failures += tally.round_trip_failures;
    result.degenerate_samples += tally.degenerate;
  }
  const double total = static_cast<double>(config.samples);
  for (std::size_t c = 0; c < class_count; ++c) {
    result.frequencies.push_back(static_cast<double>(result.counts[c]) / total);
    const double expected = total * result.analytic[c];
    const double diff = static_cast<double>(result.counts[c]) - expected;
    result.chi_square += diff * diff / expected;
  }
  return result;
}

}  // namespace fillings
