#include "fillings/embedding.hpp"

#include "fillings/errors.hpp"

namespace fillings {

DistanceMatrix::DistanceMatrix(MatrixX<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DomainError("distance matrix must be square");
  if (entries_.rows() < 2) throw DomainError("distance matrix needs at least 2 points");
  for (int p = 0; p < size(); ++p) {
    if (entries_(p, p) != 0) throw DomainError("distance matrix diagonal must be zero");
    for (int q = p + 1; q < size(); ++q) {
      if (entries_(p, q) != entries_(q, p)) throw DomainError("distance matrix must be symmetric");
      if (entries_(p, q) < 0) throw DomainError("distances must be nonnegative");
    }
  }
}

DistanceMatrix DistanceMatrix::from_upper_triangle(int n, std::span<const Rational> values) {
  if (n < 2) throw DomainError("distance matrix needs at least 2 points");
  if (static_cast<int>(values.size()) != n * (n - 1) / 2) {
    throw DomainError("expected " + std::to_string(n * (n - 1) / 2) + " upper-triangle values");
  }
  MatrixX<Rational> entries = MatrixX<Rational>::Zero(n, n);
  std::size_t c = 0;
  for (auto [p, q] : leaf_pairs(n)) {
    entries(p, q) = values[c];
    entries(q, p) = values[c];
    ++c;
  }
  return DistanceMatrix(std::move(entries));
}

VectorX<Rational> DistanceMatrix::upper_triangle() const {
  const int n = size();
  VectorX<Rational> result(n * (n - 1) / 2);
  int c = 0;
  for (auto [p, q] : leaf_pairs(n)) result(c++) = entries_(p, q);
  return result;
}

Rational DistanceMatrix::norm_l1() const { return upper_triangle().sum(); }

DistanceMatrix DistanceMatrix::permuted(std::span<const int> permutation) const {
  if (static_cast<int>(permutation.size()) != size()) {
    throw DomainError("permutation size does not match matrix size");
  }
  MatrixX<Rational> result(size(), size());
  for (int p = 0; p < size(); ++p) {
    for (int q = 0; q < size(); ++q) result(permutation[p], permutation[q]) = entries_(p, q);
  }
  return DistanceMatrix(std::move(result));
}

std::vector<std::pair<int, int>> leaf_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
  }
  return pairs;
}

MatrixX<int> path_incidence(const Topology& t) {
  const int n = t.leaf_count();
  MatrixX<int> incidence = MatrixX<int>::Zero(t.edge_count(), n * (n - 1) / 2);
  // Parent edges of a traversal rooted at each leaf p give every path p -> q.
  std::vector<EdgeIndex> via(t.vertex_count());
  std::vector<Vertex> from(t.vertex_count());
  int column = 0;
  for (Vertex p = 0; p < n - 1; ++p) {
    std::fill(via.begin(), via.end(), -1);
    std::vector<Vertex> stack{p};
    from[p] = p;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : t.neighbors(v)) {
        if (inc.vertex == from[v]) continue;
        from[inc.vertex] = v;
        via[inc.vertex] = inc.edge;
        stack.push_back(inc.vertex);
      }
    }
    for (Vertex q = p + 1; q < n; ++q, ++column) {
      for (Vertex v = q; v != p; v = from[v]) incidence(via[v], column) = 1;
    }
  }
  return incidence;
}

std::vector<int> path_counts(const Topology& t) {
  const MatrixX<int> incidence = path_incidence(t);
  std::vector<int> counts(t.edge_count());
  for (int i = 0; i < t.edge_count(); ++i) counts[i] = incidence.row(i).sum();
  return counts;
}

DistanceMatrix induced_distances(const Topology& t, const WeightDistribution& weights) {
  if (weights.size() != t.edge_count()) {
    throw DomainError("weight distribution has " + std::to_string(weights.size()) +
                      " entries for " + std::to_string(t.edge_count()) + " edges");
  }
  for (int i = 0; i < weights.size(); ++i) {
    if (weights(i) < 0) throw DomainError("edge " + std::to_string(i + 1) + " has negative weight");
  }
  return DistanceMatrix(induced_distance_matrix<Rational>(t, weights));
}

std::vector<WeightDistribution> simplex_vertex_weights(const Topology& t) {
  const auto counts = path_counts(t);
  std::vector<WeightDistribution> vertices;
  for (int i = 0; i < t.edge_count(); ++i) {
    WeightDistribution w = WeightDistribution::Zero(t.edge_count());
    w(i) = Rational(1, counts[i]);
    vertices.push_back(std::move(w));
  }
  return vertices;
}

}  // namespace fillings
