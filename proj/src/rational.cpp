#include "fillings/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "fillings/errors.hpp"

namespace fillings {
namespace {

bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  out = Integer(std::string(text[0] == '+' ? text.substr(1) : text));
  return true;
}

constexpr int kSmallPrimeLimit = 1000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> result;
    std::vector<bool> sieve(kSmallPrimeLimit + 1, true);
    for (unsigned p = 2; p <= kSmallPrimeLimit; ++p) {
      if (!sieve[p]) continue;
      result.push_back(p);
      for (unsigned q = p * p; q <= kSmallPrimeLimit; q += p) sieve[q] = false;
    }
    return result;
  }();
  return primes;
}

// Multiplicity of small primes in |value|; the cofactor is left in `value`.
std::map<unsigned, int> small_prime_factors(Integer& value) {
  std::map<unsigned, int> factors;
  if (value < 0) value = -value;
  if (value == 0) return factors;
  for (unsigned p : small_primes()) {
    while (value % p == 0) {
      value /= p;
      ++factors[p];
    }
  }
  return factors;
}

Integer power(unsigned base, int exponent) {
  Integer result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  } else {
    if (!parse_integer(text.substr(0, slash), num)) {
      throw ParseError("invalid numerator in '" + std::string(text) + "'", 0);
    }
    auto den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+' ||
        !parse_integer(den_text, den)) {
      throw ParseError("invalid denominator in '" + std::string(text) + "'", slash + 1);
    }
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string format_rational_factored(const Rational& value) {
  if (value == 0) return "0";
  Integer num = numerator(value), den = denominator(value);
  bool negative = num < 0;
  auto num_factors = small_prime_factors(num);
  auto den_factors = small_prime_factors(den);

  unsigned best_prime = 0;
  int best_exponent = 0;
  for (auto [p, e] : num_factors) {
    if (e > std::abs(best_exponent)) best_prime = p, best_exponent = e;
  }
  for (auto [p, e] : den_factors) {
    if (e > std::abs(best_exponent)) best_prime = p, best_exponent = -e;
  }
  if (std::abs(best_exponent) < 3) return format_rational(value);

  Rational rest = best_exponent > 0 ? value / Rational(power(best_prime, best_exponent))
                                    : value * Rational(power(best_prime, -best_exponent));
  std::string out = negative ? "-" : "";
  Rational magnitude = negative ? Rational(-rest) : rest;
  out += numerator(magnitude).str();
  if (denominator(magnitude) != 1) out += "/" + denominator(magnitude).str();
  out += " * " + std::to_string(best_prime) + "^" + std::to_string(best_exponent);
  return out;
}

HighPrecision to_high_precision(const Rational& value) {
  return HighPrecision(numerator(value).str()) / HighPrecision(denominator(value).str());
}

std::string format_decimal(const HighPrecision& value, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << value;
  return os.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite double");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result{Integer(scaled)};
  if (exponent > 0) {
    result *= Rational(power(2, exponent));
  } else if (exponent < 0) {
    result /= Rational(power(2, -exponent));
  }
  return result;
}

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Integer result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

Integer labeled_tree_count(int n) {
  if (n < 3) throw DomainError("labeled_tree_count requires n >= 3");
  Integer result = 1;
  for (int k = 2 * n - 5; k > 1; k -= 2) result *= k;
  return result;
}

SurdValue SurdValue::from_rational(const Rational& value) { return SurdValue{value, 1}; }

SurdValue SurdValue::square_root(const Rational& value) {
  if (value < 0) throw DomainError("square root of a negative rational");
  if (value == 0) return SurdValue{0, 1};
  // sqrt(a/b) = sqrt(a*b) / b
  Integer den = denominator(value);
  Integer product = numerator(value) * den;
  Integer cofactor = product;
  auto factors = small_prime_factors(cofactor);

  Integer outside = 1, inside = 1;
  for (auto [p, e] : factors) {
    outside *= power(p, e / 2);
    if (e % 2) inside *= p;
  }
  Integer root = boost::multiprecision::sqrt(cofactor);
  if (root * root == cofactor) {
    outside *= root;
  } else {
    inside *= cofactor;
  }
  return SurdValue{Rational(outside, den), Rational(inside)};
}

SurdValue& SurdValue::operator*=(const SurdValue& other) {
  coefficient *= other.coefficient;
  SurdValue root = square_root(radicand * other.radicand);
  coefficient *= root.coefficient;
  radicand = root.radicand;
  return *this;
}

SurdValue& SurdValue::operator/=(const SurdValue& other) {
  if (other.coefficient == 0) throw DomainError("division by zero");
  coefficient /= other.coefficient;
  SurdValue root = square_root(radicand / other.radicand);
  coefficient *= root.coefficient;
  radicand = root.radicand;
  return *this;
}

HighPrecision SurdValue::to_high_precision() const {
  return fillings::to_high_precision(coefficient) *
         boost::multiprecision::sqrt(fillings::to_high_precision(radicand));
}

std::string SurdValue::to_string() const {
  auto plain = [](const Rational& r) {
    return denominator(r) == 1 ? numerator(r).str() : format_rational(r);
  };
  if (is_rational()) return format_rational(coefficient);
  return plain(coefficient) + " * sqrt(" + plain(radicand) + ")";
}

}  // namespace fillings
