#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fillings/embedding.hpp"
#include "fillings/oracle.hpp"
#include "fillings/probability.hpp"
#include "fillings/topology.hpp"

namespace fillings {

using Json = nlohmann::json;

// Topology: {"n", "vertices": [{"id", "label"}], "edges": [[u, v], ...]}.
// Vertex ids are zero-based; internal vertices have a null label.
Json topology_to_json(const Topology& t);
Topology topology_from_json(const Json& j);

// DistanceMatrix: {"n", "upper_triangle": [["p/q", ...], ...]}, row p holds
// the distances to points p+1..n.
Json distance_matrix_to_json(const DistanceMatrix& d);
DistanceMatrix distance_matrix_from_json(const Json& j);

// Plain text: first line n, then n-1 comma-separated upper-triangle rows.
std::string distance_matrix_to_csv(const DistanceMatrix& d);
DistanceMatrix distance_matrix_from_csv(std::istream& in);

/// Reads CSV or JSON, chosen by the first non-space character.
DistanceMatrix read_distance_matrix(std::istream& in);

// Weights: [{"edge": i (one-based), "endpoints": [u, v], "weight": "p/q"}].
Json weights_to_json(const Topology& t, const WeightDistribution& w);
WeightDistribution weights_from_json(const Topology& t, const Json& j);

Json report_to_json(const TopologyReport& r);
TopologyReport report_from_json(const Json& j);
Json reports_to_json(const std::vector<TopologyReport>& reports);
std::vector<TopologyReport> reports_from_json(const Json& j);
std::string reports_to_csv(const std::vector<TopologyReport>& reports);

Json simulation_to_json(const SimulationResult& r);
SimulationResult simulation_from_json(const Json& j);

}  // namespace fillings
