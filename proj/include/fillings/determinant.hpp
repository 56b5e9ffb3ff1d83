#pragma once

#include "fillings/rational.hpp"
#include "fillings/topology.hpp"

namespace fillings {

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
Integer bareiss_determinant(MatrixX<Integer> matrix);

/// Exact determinant: rows are cleared of denominators and the resulting
/// integer matrix is reduced with Bareiss elimination. Singular gives 0.
Rational exact_determinant(const MatrixX<Rational>& matrix);

/// Gram determinant from the product formula
///
///   det Q = 4 / prod_i (n - n(i))^2 * prod_(j,k) 4 (n / (n(j) + n(k)) - 1)
///
/// where n(i) counts the leaves beyond edge i seen from `center` and (j, k)
/// runs over sibling edge pairs below the center.
Rational closed_form_determinant(const Topology& t, Vertex center);

/// Product formula at the default center (the first centroid vertex).
Rational closed_form_determinant(const Topology& t);

/// Product formula at every internal vertex; throws std::logic_error if two
/// centers disagree, otherwise returns the common value.
Rational closed_form_determinant_all_centers(const Topology& t);

/// Simplex volume sqrt(det) / m!, kept as the exact determinant and the
/// dimension.
struct VolumeValue {
  Rational det;
  int dimension = 0;

  /// (sqrt(det) / m!)^2, exact.
  Rational volume_squared() const;
  HighPrecision volume() const;
};

VolumeValue simplex_volume(const Topology& t);

}  // namespace fillings
