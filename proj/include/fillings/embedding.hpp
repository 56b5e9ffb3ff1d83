#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fillings/rational.hpp"
#include "fillings/topology.hpp"

namespace fillings {

/// One exact weight per edge, indexed like Topology::edges().
using WeightDistribution = VectorX<Rational>;

/// Symmetric matrix of exact nonnegative distances with zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(MatrixX<Rational> entries);

  /// Values in lexicographic pair order (0,1), (0,2), ..., (n-2,n-1).
  static DistanceMatrix from_upper_triangle(int n, std::span<const Rational> values);

  int size() const { return static_cast<int>(entries_.rows()); }
  /// Zero-based point indices.
  const Rational& operator()(int p, int q) const { return entries_(p, q); }
  const MatrixX<Rational>& matrix() const { return entries_; }

  VectorX<Rational> upper_triangle() const;
  /// Sum of the entries above the diagonal.
  Rational norm_l1() const;

  /// Points renamed so that old point p becomes permutation[p] (zero-based).
  DistanceMatrix permuted(std::span<const int> permutation) const;

  friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  MatrixX<Rational> entries_;
};

/// Leaf pairs (p, q), p < q, zero-based, in lexicographic order.
std::vector<std::pair<int, int>> leaf_pairs(int n);

/// m x C(n,2) 0/1 matrix; entry (i, c) is 1 iff edge i lies on the path of
/// leaf pair c.
MatrixX<int> path_incidence(const Topology& t);

/// Number of leaf pairs whose path uses each edge; equals n(i)(n - n(i)).
std::vector<int> path_counts(const Topology& t);

/// Leaf-to-leaf path sums. Throws DomainError for a wrong-sized or negative
/// weight vector.
DistanceMatrix induced_distances(const Topology& t, const WeightDistribution& weights);

/// Vertices of the weight simplex whose image is the unit-norm slice: the
/// i-th distribution is 1/q_i on edge i and zero elsewhere.
std::vector<WeightDistribution> simplex_vertex_weights(const Topology& t);

/// Path sums for any scalar type, returned as a full symmetric matrix.
template <typename Scalar>
MatrixX<Scalar> induced_distance_matrix(const Topology& t, const VectorX<Scalar>& weights) {
  const int n = t.leaf_count();
  const VectorX<Scalar> upper = path_incidence(t).cast<Scalar>().transpose() * weights;
  MatrixX<Scalar> result = MatrixX<Scalar>::Zero(n, n);
  int c = 0;
  for (auto [p, q] : leaf_pairs(n)) {
    result(p, q) = upper(c);
    result(q, p) = upper(c);
    ++c;
  }
  return result;
}

/// Row i is the upper-triangle vector of the distances induced by the i-th
/// simplex vertex: 1/q_i where edge i is on the pair's path, else 0.
template <typename Scalar>
MatrixX<Scalar> vertex_vector_matrix(const Topology& t) {
  const auto counts = path_counts(t);
  MatrixX<Scalar> rows = path_incidence(t).cast<Scalar>();
  for (int i = 0; i < rows.rows(); ++i) rows.row(i) /= Scalar(counts[i]);
  return rows;
}

/// Gram matrix of the simplex vertex vectors, from shared path counts:
/// Q_ij = #{pairs using both i and j} / (q_i q_j).
template <typename Scalar>
MatrixX<Scalar> gram_matrix(const Topology& t) {
  const MatrixX<int> incidence = path_incidence(t);
  const MatrixX<int> shared = incidence * incidence.transpose();
  const auto counts = path_counts(t);
  MatrixX<Scalar> gram(shared.rows(), shared.cols());
  for (int i = 0; i < gram.rows(); ++i) {
    for (int j = 0; j < gram.cols(); ++j) {
      gram(i, j) = Scalar(shared(i, j)) / (Scalar(counts[i]) * Scalar(counts[j]));
    }
  }
  return gram;
}

}  // namespace fillings
