#pragma once

#include <string>
#include <string_view>

#include "fillings/topology.hpp"

namespace fillings {

/// Parses a semicolon-terminated Newick string whose leaves are the integer
/// labels 1..n. A root with two children is suppressed into a single edge;
/// branch lengths are accepted and ignored. Throws ParseError with the byte
/// offset of the problem.
Topology parse_newick(std::string_view text);

/// Canonical Newick: rooted at the centroid vertex, or at the midpoint of the
/// centroid edge, with children ordered by unlabeled subtree shape and then by
/// smallest leaf label. Label-isomorphic trees give identical strings.
std::string emit_newick(const Topology& t);

}  // namespace fillings
