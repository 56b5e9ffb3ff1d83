#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fillings {

/// Precondition violated by an argument (n out of range, leaf used as a
/// center, missing edge weight, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text input. `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A distance matrix that the given topology cannot produce with
/// nonnegative weights.
class NotRealizedError : public std::runtime_error {
 public:
  NotRealizedError(const std::string& what, std::optional<int> edge)
      : std::runtime_error(what), edge_(edge) {}

  /// Zero-based edge index, when the failure is attributable to one edge.
  std::optional<int> edge() const { return edge_; }

 private:
  std::optional<int> edge_;
};

/// A distance matrix violating the four-point condition. The witness holds
/// one-based point labels and may repeat a point (triangle violations).
class NonAdditiveError : public std::runtime_error {
 public:
  NonAdditiveError(const std::string& what, std::array<int, 4> witness)
      : std::runtime_error(what), witness_(witness) {}

  const std::array<int, 4>& witness() const { return witness_; }

 private:
  std::array<int, 4> witness_;
};

}  // namespace fillings
