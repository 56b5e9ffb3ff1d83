#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace fillings {

// Expression templates are disabled so the types compose cleanly with Eigen.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Decimal type for quantities that are only defined up to a square root.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_dec_float<50>, boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Parses "p/q", "p" or "-p/q". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Always "p/q", including integers ("3/1").
std::string format_rational(const Rational& value);

/// Renders the largest small-prime power separately, e.g. "4/9 * 5^-12".
/// Falls back to format_rational when no prime power with |exponent| >= 3
/// exists.
std::string format_rational_factored(const Rational& value);

HighPrecision to_high_precision(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string format_decimal(const HighPrecision& value, int digits = 30);

double to_double(const Rational& value);

/// Exact conversion of a finite double.
Rational from_double(double value);

Integer factorial(int n);

/// (2n-5)!! for n >= 3: the number of labeled unrooted binary trees.
Integer labeled_tree_count(int n);

/// coefficient * sqrt(radicand), with the radicand kept free of square
/// factors over small primes.
struct SurdValue {
  Rational coefficient{1};
  Rational radicand{1};

  static SurdValue from_rational(const Rational& value);
  /// sqrt(value) with perfect squares pulled into the coefficient.
  static SurdValue square_root(const Rational& value);

  SurdValue& operator*=(const SurdValue& other);
  SurdValue& operator/=(const SurdValue& other);

  bool is_rational() const { return radicand == 1; }
  HighPrecision to_high_precision() const;
  std::string to_string() const;

  friend bool operator==(const SurdValue&, const SurdValue&) = default;
};

}  // namespace fillings
