#include "fillings/topology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "fillings/errors.hpp"

namespace fillings {
namespace {

std::uint64_t factorial_u64(int k) {
  std::uint64_t result = 1;
  for (int i = 2; i <= k; ++i) result *= static_cast<std::uint64_t>(i);
  return result;
}

struct RootedShape {
  std::string encoding;
  std::uint64_t automorphisms;
};

// AHU-style encoding of the subtree hanging below `v` when entered from
// `parent`, together with the order of its rooted automorphism group.
RootedShape rooted_shape(const Topology& t, Vertex v, Vertex parent) {
  if (t.is_leaf(v)) return {"0", 1};
  std::vector<RootedShape> children;
  children.reserve(2);
  for (const Incidence& inc : t.neighbors(v)) {
    if (inc.vertex != parent) children.push_back(rooted_shape(t, inc.vertex, v));
  }
  std::sort(children.begin(), children.end(),
            [](const RootedShape& a, const RootedShape& b) { return a.encoding < b.encoding; });

  RootedShape result{"(", 1};
  std::size_t run = 0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    result.encoding += children[i].encoding;
    result.automorphisms *= children[i].automorphisms;
    run = (i > 0 && children[i].encoding == children[i - 1].encoding) ? run + 1 : 1;
    // Each further identical child multiplies by the size of the run.
    result.automorphisms *= run;
  }
  result.encoding += ")";
  return result;
}

RootedShape unrooted_shape(const Topology& t) {
  auto centers = centroids(t);
  if (centers.size() == 1) return rooted_shape(t, centers[0], -1);

  RootedShape a = rooted_shape(t, centers[0], centers[1]);
  RootedShape b = rooted_shape(t, centers[1], centers[0]);
  if (b.encoding < a.encoding) std::swap(a, b);
  RootedShape result{"E" + a.encoding + b.encoding, a.automorphisms * b.automorphisms};
  if (a.encoding == b.encoding) result.automorphisms *= 2;
  return result;
}

}  // namespace

Topology::Topology(int leaf_count, std::vector<Edge> edges)
    : leaf_count_(leaf_count), edges_(std::move(edges)) {
  if (leaf_count_ < 3) throw DomainError("a binary topology needs at least 3 leaves");
  const int vertex_total = 2 * leaf_count_ - 2;
  if (static_cast<int>(edges_.size()) != 2 * leaf_count_ - 3) {
    throw DomainError("expected " + std::to_string(2 * leaf_count_ - 3) + " edges, got " +
                      std::to_string(edges_.size()));
  }

  adjacency_.assign(vertex_total, {});
  std::vector<int> degree(vertex_total, 0);
  for (EdgeIndex i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= vertex_total || e.v >= vertex_total || e.u == e.v) {
      throw DomainError("edge " + std::to_string(i) + " has invalid endpoints");
    }
    for (Vertex end : {e.u, e.v}) {
      const int capacity = is_leaf(end) ? 1 : 3;
      if (degree[end] == capacity) {
        throw DomainError("vertex " + std::to_string(end) + " exceeds degree " +
                          std::to_string(capacity));
      }
      adjacency_[end][degree[end]++] = {e.other(end), i};
    }
  }
  for (Vertex v = 0; v < vertex_total; ++v) {
    if (degree[v] != (is_leaf(v) ? 1 : 3)) {
      throw DomainError("vertex " + std::to_string(v) + " has degree " +
                        std::to_string(degree[v]));
    }
  }

  // |E| = |V| - 1, so connected implies acyclic.
  std::vector<bool> seen(vertex_total, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : neighbors(v)) {
      if (!seen[inc.vertex]) {
        seen[inc.vertex] = true;
        ++reached;
        stack.push_back(inc.vertex);
      }
    }
  }
  if (reached != vertex_total) throw DomainError("edge list is not a connected tree");
}

std::vector<Vertex> Topology::internal_vertices() const {
  std::vector<Vertex> result;
  for (Vertex v = leaf_count_; v < vertex_count(); ++v) result.push_back(v);
  return result;
}

Topology Topology::relabeled(std::span<const int> permutation) const {
  if (static_cast<int>(permutation.size()) != leaf_count_) {
    throw DomainError("permutation size does not match leaf count");
  }
  std::vector<bool> used(leaf_count_, false);
  for (int label : permutation) {
    if (label < 1 || label > leaf_count_ || used[label - 1]) {
      throw DomainError("relabeling is not a permutation of 1..n");
    }
    used[label - 1] = true;
  }
  auto map_vertex = [&](Vertex v) { return is_leaf(v) ? permutation[v] - 1 : v; };
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const Edge& e : edges_) mapped.push_back({map_vertex(e.u), map_vertex(e.v)});
  return Topology(leaf_count_, std::move(mapped));
}

void for_each_labeled_topology(int n, const std::function<void(const Topology&)>& visit) {
  if (n < 3) throw DomainError("enumeration requires n >= 3");
  // Leaves are 0..n-1, the star hub is n, the vertex created when inserting
  // leaf k (zero-based) is n + k - 2.
  std::vector<Edge> edges{{0, n}, {1, n}, {2, n}};
  edges.reserve(2 * n - 3);

  std::function<void(int)> grow = [&](int next_leaf) {
    if (next_leaf == n) {
      visit(Topology(n, edges));
      return;
    }
    const Vertex fresh = n + next_leaf - 2;
    const std::size_t existing = edges.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const Edge split = edges[i];
      edges[i] = {split.u, fresh};
      edges.push_back({fresh, split.v});
      edges.push_back({fresh, next_leaf});
      grow(next_leaf + 1);
      edges.pop_back();
      edges.pop_back();
      edges[i] = split;
    }
  };
  grow(3);
}

std::vector<Topology> enumerate_labeled_topologies(int n) {
  std::vector<Topology> result;
  for_each_labeled_topology(n, [&](const Topology& t) { result.push_back(t); });
  return result;
}

std::vector<TopologyClass> enumerate_topology_classes(int n) {
  if (n < 3) throw DomainError("enumeration requires n >= 3");
  if (n > 20) throw DomainError("class enumeration is limited to n <= 20");
  // Grows class representatives leaf by leaf with the same edge operations
  // as for_each_labeled_topology, so each class keeps its first labeled tree.
  auto as_topology = [n](int leaves, const std::vector<Edge>& edges) {
    std::vector<Edge> local;
    local.reserve(edges.size());
    auto map_vertex = [&](Vertex v) { return v >= n ? v - n + leaves : v; };
    for (const Edge& e : edges) local.push_back({map_vertex(e.u), map_vertex(e.v)});
    return Topology(leaves, std::move(local));
  };
  std::vector<std::vector<Edge>> level{{{0, n}, {1, n}, {2, n}}};
  for (int next_leaf = 3; next_leaf < n; ++next_leaf) {
    const Vertex fresh = n + next_leaf - 2;
    std::vector<std::vector<Edge>> grown;
    std::unordered_set<std::string> seen;
    for (const auto& edges : level) {
      for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<Edge> candidate = edges;
        const Edge split = candidate[i];
        candidate[i] = {split.u, fresh};
        candidate.push_back({fresh, split.v});
        candidate.push_back({fresh, next_leaf});
        if (seen.insert(unrooted_shape(as_topology(next_leaf + 1, candidate)).encoding).second) {
          grown.push_back(std::move(candidate));
        }
      }
    }
    level = std::move(grown);
  }

  std::vector<TopologyClass> classes;
  const std::uint64_t n_factorial = factorial_u64(n);
  for (const auto& edges : level) {
    Topology t(n, edges);
    const std::uint64_t automorphisms = unrooted_shape(t).automorphisms;
    classes.push_back({std::move(t), automorphisms, n_factorial / automorphisms});
  }
  return classes;
}

std::uint64_t automorphism_order(const Topology& t) { return unrooted_shape(t).automorphisms; }

std::string shape_encoding(const Topology& t) { return unrooted_shape(t).encoding; }

int mustache_count(const Topology& t) {
  int count = 0;
  for (Vertex v : t.internal_vertices()) {
    int leaves = 0;
    for (const Incidence& inc : t.neighbors(v)) leaves += t.is_leaf(inc.vertex) ? 1 : 0;
    if (leaves == 2) ++count;
  }
  return count;
}

std::vector<Vertex> centroids(const Topology& t) {
  const int total = t.vertex_count();
  std::vector<int> size(total, 1);
  std::vector<Vertex> parent(total, -1), order;
  order.reserve(total);
  std::vector<Vertex> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Incidence& inc : t.neighbors(v)) {
      if (parent[inc.vertex] == -1) {
        parent[inc.vertex] = v;
        stack.push_back(inc.vertex);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }

  int best = std::numeric_limits<int>::max();
  std::vector<Vertex> result;
  for (Vertex v = 0; v < total; ++v) {
    int largest = total - size[v];
    for (const Incidence& inc : t.neighbors(v)) {
      if (inc.vertex != 0 && parent[inc.vertex] == v) largest = std::max(largest, size[inc.vertex]);
    }
    if (largest < best) {
      best = largest;
      result = {v};
    } else if (largest == best) {
      result.push_back(v);
    }
  }
  return result;
}

std::vector<std::uint64_t> edge_splits(const Topology& t) {
  if (t.leaf_count() > 64) throw DomainError("edge_splits supports at most 64 leaves");
  std::vector<std::uint64_t> splits(t.edge_count(), 0);
  std::function<std::uint64_t(Vertex, Vertex)> below = [&](Vertex v, Vertex from) {
    std::uint64_t mask = t.is_leaf(v) ? (std::uint64_t{1} << v) : 0;
    for (const Incidence& inc : t.neighbors(v)) {
      if (inc.vertex == from) continue;
      splits[inc.edge] = below(inc.vertex, v);
      mask |= splits[inc.edge];
    }
    return mask;
  };
  below(0, -1);
  return splits;
}

bool CenterView::same_branch(EdgeIndex i, EdgeIndex j) const {
  if (level[i] > level[j]) std::swap(i, j);
  while (level[j] > level[i]) j = parent[j];
  return i == j;
}

CenterView center_view(const Topology& t, Vertex center) {
  if (center < 0 || center >= t.vertex_count()) throw DomainError("center out of range");
  if (t.is_leaf(center)) throw DomainError("center must be an internal vertex");

  const int m = t.edge_count();
  CenterView view;
  view.center = center;
  view.level.assign(m, 0);
  view.subtree_count.assign(m, 0);
  view.branch.assign(m, 0);
  view.parent.assign(m, -1);
  view.far_vertex.assign(m, -1);

  std::function<int(Vertex, EdgeIndex, int, int)> descend = [&](Vertex v, EdgeIndex via,
                                                                int depth, int branch) {
    if (t.is_leaf(v)) return 1;
    std::array<EdgeIndex, 2> children{};
    int k = 0, count = 0;
    for (const Incidence& inc : t.neighbors(v)) {
      if (inc.edge == via) continue;
      children[k++] = inc.edge;
      view.level[inc.edge] = depth;
      view.branch[inc.edge] = branch;
      view.parent[inc.edge] = via;
      view.far_vertex[inc.edge] = inc.vertex;
      view.subtree_count[inc.edge] = descend(inc.vertex, inc.edge, depth + 1, branch);
      count += view.subtree_count[inc.edge];
    }
    view.sibling_pairs.emplace_back(children[0], children[1]);
    return count;
  };

  int b = 0;
  for (const Incidence& inc : t.neighbors(center)) {
    view.center_edges[b] = inc.edge;
    view.level[inc.edge] = 0;
    view.branch[inc.edge] = b;
    view.far_vertex[inc.edge] = inc.vertex;
    view.subtree_count[inc.edge] = descend(inc.vertex, inc.edge, 1, b);
    ++b;
  }
  return view;
}

}  // namespace fillings
