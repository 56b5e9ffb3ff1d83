#include "fillings/recovery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "fillings/errors.hpp"
#include "fillings/newick.hpp"

namespace fillings {
namespace {

std::string pair_text(int p, int q) {
  return "(" + std::to_string(p + 1) + "," + std::to_string(q + 1) + ")";
}

// Smallest boundary vertex reachable from `start` without passing `blocked`.
Vertex smallest_boundary_in_branch(const Topology& t, const std::vector<bool>& alive_edge,
                                   const std::vector<bool>& boundary, Vertex start,
                                   Vertex blocked) {
  Vertex best = -1;
  std::vector<std::pair<Vertex, Vertex>> stack{{start, blocked}};
  while (!stack.empty()) {
    auto [v, from] = stack.back();
    stack.pop_back();
    if (boundary[v] && (best == -1 || v < best)) best = v;
    for (const Incidence& inc : t.neighbors(v)) {
      if (alive_edge[inc.edge] && inc.vertex != from) stack.emplace_back(inc.vertex, v);
    }
  }
  return best;
}

// Weighted tree under construction; vertices 0..n-1 are the points.
struct GrowingTree {
  int leaf_count;
  std::vector<std::map<Vertex, Rational>> adjacency;

  bool is_leaf(Vertex v) const { return v < leaf_count; }

  Vertex add_vertex() {
    adjacency.emplace_back();
    return static_cast<Vertex>(adjacency.size() - 1);
  }
  void connect(Vertex a, Vertex b, const Rational& w) {
    adjacency[a][b] = w;
    adjacency[b][a] = w;
  }
  void disconnect(Vertex a, Vertex b) {
    adjacency[a].erase(b);
    adjacency[b].erase(a);
  }
  // Splits edge (a, b) at distance `offset` from a.
  Vertex subdivide(Vertex a, Vertex b, const Rational& offset) {
    const Rational length = adjacency[a].at(b);
    disconnect(a, b);
    const Vertex mid = add_vertex();
    connect(a, mid, offset);
    connect(mid, b, length - offset);
    return mid;
  }

  std::vector<Vertex> path(Vertex from, Vertex to) const {
    std::vector<Vertex> parent(adjacency.size(), -1);
    std::vector<Vertex> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& [w, length] : adjacency[v]) {
        if (parent[w] == -1) {
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    std::vector<Vertex> result;
    for (Vertex v = to; v != from; v = parent[v]) result.push_back(v);
    result.push_back(from);
    std::reverse(result.begin(), result.end());
    return result;
  }

  std::vector<Rational> distances_from(Vertex from) const {
    std::vector<Rational> reach(adjacency.size());
    std::vector<bool> seen(adjacency.size(), false);
    std::vector<Vertex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const auto& [w, length] : adjacency[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        reach[w] = reach[v] + length;
        stack.push_back(w);
      }
    }
    return reach;
  }
};

// Attaches point x to the tree spanned by points 0..x-1.
void insert_point(GrowingTree& tree, const DistanceMatrix& d, Vertex x) {
  // Distance from x to the spanned subtree is the smallest Gromov product
  // taken against point 0.
  Vertex far_point = 1;
  Rational pendant = (d(x, 0) + d(x, 1) - d(0, 1)) / 2;
  for (Vertex j = 2; j < x; ++j) {
    Rational g = (d(x, 0) + d(x, j) - d(0, j)) / 2;
    if (g < pendant) pendant = g, far_point = j;
  }
  const Rational offset = d(0, x) - pendant;
  if (pendant < 0 || offset < 0 || offset > d(0, far_point)) {
    throw std::logic_error("attachment point outside the spanned tree");
  }

  const auto route = tree.path(0, far_point);
  Vertex anchor = route.back();
  Rational walked = 0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    if (walked == offset) {
      anchor = route[i];
      break;
    }
    const Rational& length = tree.adjacency[route[i]].at(route[i + 1]);
    if (offset < walked + length) {
      anchor = tree.subdivide(route[i], route[i + 1], offset - walked);
      break;
    }
    walked += length;
  }
  if (tree.is_leaf(anchor)) {
    // Attaching at a point itself: give it a zero-length pendant edge.
    const Vertex neighbor = tree.adjacency[anchor].begin()->first;
    anchor = tree.subdivide(anchor, neighbor, 0);
  }
  tree.connect(anchor, x, pendant);
}

void contract_zero_internal_edges(GrowingTree& tree) {
  for (Vertex u = tree.leaf_count; u < static_cast<Vertex>(tree.adjacency.size()); ++u) {
    while (true) {
      Vertex absorbed = -1;
      for (const auto& [v, length] : tree.adjacency[u]) {
        if (!tree.is_leaf(v) && length == 0) {
          absorbed = v;
          break;
        }
      }
      if (absorbed == -1) break;
      tree.disconnect(u, absorbed);
      const auto moved = tree.adjacency[absorbed];
      for (const auto& [w, length] : moved) {
        tree.disconnect(absorbed, w);
        tree.connect(u, w, length);
      }
    }
  }
}

struct Resolution {
  Topology topology;
  WeightDistribution weights;
  std::string newick;
};

// Replaces every vertex of degree > 3 by the chosen binary local tree with
// zero-weight internal edges and renumbers into a Topology.
Resolution materialize(const GrowingTree& tree, const std::vector<Vertex>& wide,
                       const std::vector<std::vector<Topology>>& options,
                       const std::vector<std::size_t>& choice) {
  const int n = tree.leaf_count;
  std::vector<Vertex> renumber(tree.adjacency.size(), -1);
  for (Vertex v = 0; v < n; ++v) renumber[v] = v;
  Vertex next = n;
  for (Vertex v = n; v < static_cast<Vertex>(tree.adjacency.size()); ++v) {
    if (!tree.adjacency[v].empty()) renumber[v] = next++;
  }

  struct WeightedEdge {
    Edge edge;
    Rational weight;
  };
  std::vector<WeightedEdge> edges;
  // attach[v][w]: the vertex replacing v at the end of edge (v, w).
  std::map<Vertex, std::map<Vertex, Vertex>> attach;
  for (std::size_t h = 0; h < wide.size(); ++h) {
    const Vertex v = wide[h];
    const Topology& local = options[h][choice[h]];
    const int degree = local.leaf_count();
    std::vector<Vertex> local_ids(local.vertex_count());
    std::vector<Vertex> neighbors;
    for (const auto& [w, l] : tree.adjacency[v]) neighbors.push_back(w);
    for (int i = 0; i < degree; ++i) local_ids[i] = -1 - i;  // placeholder for neighbor i
    local_ids[degree] = renumber[v];
    for (Vertex u = degree + 1; u < local.vertex_count(); ++u) local_ids[u] = next++;
    for (const Edge& e : local.edges()) {
      if (local.is_leaf(e.u) || local.is_leaf(e.v)) {
        const Vertex leaf = local.is_leaf(e.u) ? e.u : e.v;
        attach[v][neighbors[leaf]] = local_ids[e.other(leaf)];
      } else {
        edges.push_back({{local_ids[e.u], local_ids[e.v]}, Rational(0)});
      }
    }
  }
  auto endpoint = [&](Vertex v, Vertex toward) {
    auto it = attach.find(v);
    return it == attach.end() ? renumber[v] : it->second.at(toward);
  };
  for (Vertex u = 0; u < static_cast<Vertex>(tree.adjacency.size()); ++u) {
    for (const auto& [v, length] : tree.adjacency[u]) {
      if (u < v) edges.push_back({{endpoint(u, v), endpoint(v, u)}, length});
    }
  }

  for (auto& we : edges) {
    if (we.edge.u > we.edge.v) std::swap(we.edge.u, we.edge.v);
  }
  // Leaf edges first in label order, then internal edges by endpoints.
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.edge.u, a.edge.v) < std::tie(b.edge.u, b.edge.v);
  });
  std::vector<Edge> plain;
  WeightDistribution weights(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    plain.push_back(edges[i].edge);
    weights(static_cast<int>(i)) = edges[i].weight;
  }
  Topology topology(n, std::move(plain));
  std::string newick = emit_newick(topology);
  return {std::move(topology), std::move(weights), std::move(newick)};
}

constexpr std::size_t kExhaustiveRefinementLimit = 10000;

}  // namespace

WeightDistribution recover_weights(const Topology& t, const DistanceMatrix& distances) {
  const int n = t.leaf_count();
  if (distances.size() != n) {
    throw DomainError("matrix has " + std::to_string(distances.size()) + " points, topology has " +
                      std::to_string(n) + " leaves");
  }
  const int vertex_total = t.vertex_count();
  MatrixX<Rational> d = MatrixX<Rational>::Zero(vertex_total, vertex_total);
  d.topLeftCorner(n, n) = distances.matrix();

  std::vector<bool> boundary(vertex_total, false), alive(t.edge_count(), true);
  std::vector<int> degree(vertex_total);
  for (Vertex v = 0; v < vertex_total; ++v) {
    boundary[v] = t.is_leaf(v);
    degree[v] = static_cast<int>(t.neighbors(v).size());
  }

  WeightDistribution weights(t.edge_count());
  for (int remaining = t.edge_count(); remaining > 0; --remaining) {
    Vertex p = 0;
    while (degree[p] != 1) ++p;
    Incidence link{};
    for (const Incidence& inc : t.neighbors(p)) {
      if (alive[inc.edge]) link = inc;
    }
    const Vertex q = link.vertex;

    Rational w;
    if (boundary[q]) {
      w = d(p, q);
    } else {
      std::array<Vertex, 2> witness{};
      int k = 0;
      for (const Incidence& inc : t.neighbors(q)) {
        if (!alive[inc.edge] || inc.vertex == p) continue;
        witness[k++] = smallest_boundary_in_branch(t, alive, boundary, inc.vertex, q);
      }
      w = (d(p, witness[0]) + d(p, witness[1]) - d(witness[0], witness[1])) / 2;
    }
    if (w < 0) {
      throw NotRealizedError("matrix not realized by topology: edge " +
                                 std::to_string(link.edge + 1) + " would get negative weight " +
                                 format_rational(w),
                             link.edge);
    }
    weights(link.edge) = w;
    alive[link.edge] = false;
    --degree[p];
    --degree[q];

    if (!boundary[q]) {
      boundary[q] = true;
      for (Vertex x = 0; x < vertex_total; ++x) {
        if (boundary[x] && x != p && x != q) {
          d(q, x) = d(p, x) - w;
          d(x, q) = d(q, x);
        }
      }
    }
  }

  const DistanceMatrix realized = induced_distances(t, weights);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (realized(p, q) != distances(p, q)) {
        throw NotRealizedError("matrix not realized by topology: recovered weights give " +
                                   format_rational(realized(p, q)) + " instead of " +
                                   format_rational(distances(p, q)) + " for pair " +
                                   pair_text(p, q),
                               std::nullopt);
      }
    }
  }
  return weights;
}

AdditivityReport check_additivity(const DistanceMatrix& distances) {
  const int n = distances.size();
  Integer common = 1;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(distances(p, q)));
    }
  }
  MatrixX<Integer> d(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const Rational& value = distances(p, q);
      d(p, q) = boost::multiprecision::numerator(value) * (common / boost::multiprecision::denominator(value));
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        for (int e = c; e < n; ++e) {
          const Integer s1 = d(a, b) + d(c, e);
          const Integer s2 = d(a, c) + d(b, e);
          const Integer s3 = d(a, e) + d(b, c);
          const bool holds = s1 == s2 ? s3 <= s1 : (s1 < s2 ? s3 == s2 : s3 == s1);
          if (!holds) return {false, std::array<int, 4>{a + 1, b + 1, c + 1, e + 1}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

std::pair<Topology, WeightDistribution> reconstruct_topology(const DistanceMatrix& distances) {
  const int n = distances.size();
  if (n < 3) throw DomainError("reconstruction needs at least 3 points");
  const AdditivityReport report = check_additivity(distances);
  if (!report.is_additive) {
    const auto& w = *report.witness;
    throw NonAdditiveError("matrix is not additive: four-point condition fails for (" +
                               std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                               std::to_string(w[2]) + "," + std::to_string(w[3]) + ")",
                           w);
  }
  const auto& d = distances;

  GrowingTree tree{n, std::vector<std::map<Vertex, Rational>>(n)};
  const Vertex hub = tree.add_vertex();
  tree.connect(0, hub, (d(0, 1) + d(0, 2) - d(1, 2)) / 2);
  tree.connect(1, hub, (d(0, 1) + d(1, 2) - d(0, 2)) / 2);
  tree.connect(2, hub, (d(0, 2) + d(1, 2) - d(0, 1)) / 2);
  for (Vertex x = 3; x < n; ++x) insert_point(tree, d, x);
  contract_zero_internal_edges(tree);

  for (int p = 0; p < n; ++p) {
    const auto reach = tree.distances_from(p);
    for (int q = p + 1; q < n; ++q) {
      if (reach[q] != d(p, q)) {
        throw std::logic_error("reconstructed tree does not reproduce pair " + pair_text(p, q));
      }
    }
  }

  std::vector<Vertex> wide;
  std::vector<std::vector<Topology>> options;
  std::size_t combinations = 1;
  for (Vertex v = n; v < static_cast<Vertex>(tree.adjacency.size()); ++v) {
    const int degree = static_cast<int>(tree.adjacency[v].size());
    if (degree <= 3) continue;
    wide.push_back(v);
    options.push_back(enumerate_labeled_topologies(degree));
    combinations = std::min(combinations * options.back().size(), kExhaustiveRefinementLimit + 1);
  }

  std::vector<std::size_t> choice(wide.size(), 0);
  Resolution best = materialize(tree, wide, options, choice);
  if (combinations <= kExhaustiveRefinementLimit) {
    // Mixed-radix walk over all refinements.
    while (true) {
      std::size_t h = 0;
      while (h < wide.size() && ++choice[h] == options[h].size()) choice[h++] = 0;
      if (h == wide.size()) break;
      Resolution candidate = materialize(tree, wide, options, choice);
      if (candidate.newick < best.newick) best = std::move(candidate);
    }
  } else {
    // Too many refinements: improve one vertex at a time.
    std::vector<std::size_t> best_choice = choice;
    for (std::size_t h = 0; h < wide.size(); ++h) {
      for (std::size_t option = 1; option < options[h].size(); ++option) {
        choice = best_choice;
        choice[h] = option;
        Resolution candidate = materialize(tree, wide, options, choice);
        if (candidate.newick < best.newick) {
          best = std::move(candidate);
          best_choice = choice;
        }
      }
    }
  }
  return {std::move(best.topology), std::move(best.weights)};
}

}  // namespace fillings
