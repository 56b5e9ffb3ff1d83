#include "fillings/determinant.hpp"

#include <stdexcept>

#include "fillings/embedding.hpp"
#include "fillings/errors.hpp"

namespace fillings {

Integer bareiss_determinant(MatrixX<Integer> a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  const int size = static_cast<int>(a.rows());
  if (size == 0) return 1;
  Integer sign = 1, previous = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a(k, k) == 0) {
      int swap_row = k + 1;
      while (swap_row < size && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == size) return 0;
      a.row(k).swap(a.row(swap_row));
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        // Exact by Sylvester's identity.
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(size - 1, size - 1);
}

Rational exact_determinant(const MatrixX<Rational>& matrix) {
  if (matrix.rows() != matrix.cols()) throw DomainError("determinant of a non-square matrix");
  MatrixX<Integer> scaled(matrix.rows(), matrix.cols());
  Integer scale_product = 1;
  for (int i = 0; i < matrix.rows(); ++i) {
    Integer row_scale = 1;
    for (int j = 0; j < matrix.cols(); ++j) row_scale = lcm(row_scale, denominator(matrix(i, j)));
    for (int j = 0; j < matrix.cols(); ++j) {
      scaled(i, j) = numerator(matrix(i, j)) * (row_scale / denominator(matrix(i, j)));
    }
    scale_product *= row_scale;
  }
  return Rational(bareiss_determinant(std::move(scaled)), scale_product);
}

Rational closed_form_determinant(const Topology& t, Vertex center) {
  const CenterView view = center_view(t, center);
  const int n = t.leaf_count();
  Integer denominator_product = 1;
  for (int count : view.subtree_count) denominator_product *= Integer(n - count) * (n - count);

  Rational result(4, denominator_product);
  for (auto [j, k] : view.sibling_pairs) {
    result *= 4 * (Rational(n, view.subtree_count[j] + view.subtree_count[k]) - 1);
  }
  return result;
}

Rational closed_form_determinant(const Topology& t) {
  return closed_form_determinant(t, centroids(t).front());
}

Rational closed_form_determinant_all_centers(const Topology& t) {
  const auto centers = t.internal_vertices();
  const Rational first = closed_form_determinant(t, centers.front());
  for (std::size_t i = 1; i < centers.size(); ++i) {
    if (closed_form_determinant(t, centers[i]) != first) {
      throw std::logic_error("product formula depends on the center at vertex " +
                             std::to_string(centers[i]));
    }
  }
  return first;
}

Rational VolumeValue::volume_squared() const {
  const Integer m_factorial = factorial(dimension);
  return det / Rational(m_factorial * m_factorial);
}

HighPrecision VolumeValue::volume() const {
  return boost::multiprecision::sqrt(to_high_precision(det)) /
         HighPrecision(factorial(dimension).str());
}

VolumeValue simplex_volume(const Topology& t) {
  return {closed_form_determinant(t), t.edge_count()};
}

}  // namespace fillings
