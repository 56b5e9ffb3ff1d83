#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fillings {

using Vertex = int;
using EdgeIndex = int;

struct Edge {
  Vertex u;
  Vertex v;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex vertex;
  EdgeIndex edge;
};

/// Unrooted binary tree with n labeled boundary vertices.
///
/// Vertices 0..n-1 are the boundary vertices; vertex v carries label v+1.
/// Vertices n..2n-3 are internal and have degree exactly 3. Edges are indexed
/// 0..2n-4 in construction order. The constructor validates all of this and
/// throws DomainError otherwise.
class Topology {
 public:
  Topology(int leaf_count, std::vector<Edge> edges);

  int leaf_count() const { return leaf_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int internal_count() const { return vertex_count() - leaf_count_; }

  bool is_leaf(Vertex v) const { return v < leaf_count_; }
  int label(Vertex v) const { return v + 1; }
  Vertex leaf(int label) const { return label - 1; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_[i]; }
  std::span<const Incidence> neighbors(Vertex v) const {
    return {adjacency_[v].data(), is_leaf(v) ? 1u : 3u};
  }
  /// The unique edge incident to a boundary vertex.
  EdgeIndex leaf_edge(Vertex leaf) const { return adjacency_[leaf][0].edge; }

  std::vector<Vertex> internal_vertices() const;

  /// Applies a permutation of labels: leaf with label l gets label
  /// permutation[l-1]. Edge indexing is preserved.
  Topology relabeled(std::span<const int> permutation) const;

  /// Identical edge lists (same indexing, same endpoints).
  friend bool operator==(const Topology& a, const Topology& b) {
    return a.leaf_count_ == b.leaf_count_ && a.edges_ == b.edges_;
  }

 private:
  int leaf_count_;
  std::vector<Edge> edges_;
  std::vector<std::array<Incidence, 3>> adjacency_;
};

/// Calls `visit` on every labeled topology with n leaves, in leaf-insertion
/// order: leaf k+1 is inserted into each edge of each k-leaf tree, edges in
/// index order. Exactly (2n-5)!! calls.
void for_each_labeled_topology(int n, const std::function<void(const Topology&)>& visit);

std::vector<Topology> enumerate_labeled_topologies(int n);

struct TopologyClass {
  Topology representative;
  std::uint64_t simm;           // automorphism group order
  std::uint64_t labeled_count;  // n! / simm
};

/// Groups the labeled enumeration by unlabeled isomorphism. Classes appear in
/// order of first occurrence; the representative is that first occurrence.
std::vector<TopologyClass> enumerate_topology_classes(int n);

/// Order of the automorphism group of the tree with labels ignored.
std::uint64_t automorphism_order(const Topology& t);

/// Isomorphism-invariant encoding of the unlabeled shape.
std::string shape_encoding(const Topology& t);

bool is_isomorphic(const Topology& a, const Topology& b, bool respect_labels);

/// Internal vertices with exactly two boundary neighbors.
int mustache_count(const Topology& t);

/// One or two vertices minimizing the largest component left after removal.
std::vector<Vertex> centroids(const Topology& t);

/// Per-edge bitmask of the leaves on the side not containing label 1
/// (bit l-1 for label l). Label-isomorphic trees have equal split sets.
std::vector<std::uint64_t> edge_splits(const Topology& t);

/// The tree seen from a degree-3 center.
struct CenterView {
  Vertex center;
  std::array<EdgeIndex, 3> center_edges;
  std::vector<int> level;          // per edge: distance from center to nearer endpoint
  std::vector<int> subtree_count;  // per edge: boundary vertices beyond the edge
  std::vector<int> branch;         // per edge: index into center_edges
  std::vector<EdgeIndex> parent;   // per edge: next edge toward the center, -1 at level 0
  std::vector<Vertex> far_vertex;  // per edge: endpoint away from the center
  /// Adjacent edge pairs with equal nonzero level, i.e. the two child edges
  /// below each internal non-center vertex.
  std::vector<std::pair<EdgeIndex, EdgeIndex>> sibling_pairs;

  /// Edges i, j lie on one root-to-leaf path.
  bool same_branch(EdgeIndex i, EdgeIndex j) const;
};

CenterView center_view(const Topology& t, Vertex center);

}  // namespace fillings
