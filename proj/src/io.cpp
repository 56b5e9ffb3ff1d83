#include "fillings/io.hpp"

#include <istream>
#include <iterator>
#include <sstream>

#include "fillings/errors.hpp"
#include "fillings/newick.hpp"

namespace fillings {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("expected a rational string", 0);
}

}  // namespace

Json topology_to_json(const Topology& t) {
  Json vertices = Json::array();
  for (Vertex v = 0; v < t.vertex_count(); ++v) {
    vertices.push_back({{"id", v}, {"label", t.is_leaf(v) ? Json(t.label(v)) : Json(nullptr)}});
  }
  Json edges = Json::array();
  for (const Edge& e : t.edges()) edges.push_back({e.u, e.v});
  return {{"n", t.leaf_count()}, {"vertices", vertices}, {"edges", edges}};
}

Topology topology_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (j.contains("vertices")) {
      for (const Json& v : j.at("vertices")) {
        const int id = v.at("id").get<int>();
        const Json& label = v.at("label");
        const bool leaf = id < n;
        if (leaf != !label.is_null() || (leaf && label.get<int>() != id + 1)) {
          throw ParseError("vertex " + std::to_string(id) + " has an inconsistent label", 0);
        }
      }
    }
    std::vector<Edge> edges;
    for (const Json& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return Topology(n, std::move(edges));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid topology JSON: ") + e.what(), 0);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid topology JSON: ") + e.what(), 0);
  }
}

Json distance_matrix_to_json(const DistanceMatrix& d) {
  Json rows = Json::array();
  for (int p = 0; p + 1 < d.size(); ++p) {
    Json row = Json::array();
    for (int q = p + 1; q < d.size(); ++q) row.push_back(format_rational(d(p, q)));
    rows.push_back(row);
  }
  return {{"n", d.size()}, {"upper_triangle", rows}};
}

DistanceMatrix distance_matrix_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Rational> values;
    const Json& rows = j.at("upper_triangle");
    if (static_cast<int>(rows.size()) != n - 1) throw ParseError("expected n-1 rows", 0);
    for (int p = 0; p + 1 < n; ++p) {
      if (static_cast<int>(rows[p].size()) != n - 1 - p) {
        throw ParseError("row " + std::to_string(p + 1) + " has the wrong length", 0);
      }
      for (const Json& value : rows[p]) values.push_back(rational_from_json(value));
    }
    return DistanceMatrix::from_upper_triangle(n, values);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid distance matrix JSON: ") + e.what(), 0);
  }
}

std::string distance_matrix_to_csv(const DistanceMatrix& d) {
  std::string out = std::to_string(d.size()) + "\n";
  for (int p = 0; p + 1 < d.size(); ++p) {
    for (int q = p + 1; q < d.size(); ++q) {
      if (q > p + 1) out += ",";
      out += format_rational(d(p, q));
    }
    out += "\n";
  }
  return out;
}

DistanceMatrix distance_matrix_from_csv(std::istream& in) {
  std::string line;
  std::size_t offset = 0;
  std::size_t line_start = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      line_start = offset;
      offset += line.size() + 1;
      line = trim(line);
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty distance matrix CSV", 0);
  int n = 0;
  try {
    n = std::stoi(line);
  } catch (const std::exception&) {
    throw ParseError("first line must hold the number of points", 0);
  }
  if (n < 2) throw ParseError("distance matrix needs at least 2 points", 0);

  std::vector<Rational> values;
  for (int p = 0; p + 1 < n; ++p) {
    if (!next_line()) throw ParseError("missing row " + std::to_string(p + 1), offset);
    std::stringstream row(line);
    std::string cell;
    int cells = 0;
    while (std::getline(row, cell, ',')) {
      values.push_back(parse_rational(trim(cell)));
      ++cells;
    }
    if (cells != n - 1 - p) {
      throw ParseError("row " + std::to_string(p + 1) + " has " + std::to_string(cells) +
                           " entries, expected " + std::to_string(n - 1 - p),
                       line_start);
    }
  }
  return DistanceMatrix::from_upper_triangle(n, values);
}

DistanceMatrix read_distance_matrix(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return distance_matrix_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
  }
  std::istringstream stream(text);
  return distance_matrix_from_csv(stream);
}

Json weights_to_json(const Topology& t, const WeightDistribution& w) {
  Json out = Json::array();
  for (int i = 0; i < t.edge_count(); ++i) {
    out.push_back({{"edge", i + 1},
                   {"endpoints", {t.edge(i).u, t.edge(i).v}},
                   {"weight", format_rational(w(i))}});
  }
  return out;
}

WeightDistribution weights_from_json(const Topology& t, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != t.edge_count()) {
    throw ParseError("expected one weight per edge", 0);
  }
  WeightDistribution w(t.edge_count());
  for (const Json& entry : j) {
    const int edge = entry.at("edge").get<int>();
    if (edge < 1 || edge > t.edge_count()) throw ParseError("edge index out of range", 0);
    w(edge - 1) = rational_from_json(entry.at("weight"));
  }
  return w;
}

Json report_to_json(const TopologyReport& r) {
  const Topology& rep = r.topology_class.representative;
  Json out = {
      {"newick", emit_newick(rep)},
      {"topology", topology_to_json(rep)},
      {"simm", r.topology_class.simm},
      {"labeled_count", r.topology_class.labeled_count},
      {"det", format_rational(r.det())},
      {"dimension", r.volume.dimension},
      {"paper_weight", format_rational(r.paper_weight)},
      {"volume_multiplier", format_rational(r.volume_multiplier)},
      {"convention", std::string(to_string(r.convention))},
  };
  out["probability"] = r.exact_probability ? format_rational(*r.exact_probability)
                                           : format_decimal(r.probability, 30);
  return out;
}

TopologyReport report_from_json(const Json& j) {
  try {
    TopologyReport r{TopologyClass{topology_from_json(j.at("topology")),
                                   j.at("simm").get<std::uint64_t>(),
                                   j.at("labeled_count").get<std::uint64_t>()}};
    r.volume.det = rational_from_json(j.at("det"));
    r.volume.dimension = j.at("dimension").get<int>();
    r.paper_weight = rational_from_json(j.at("paper_weight"));
    r.volume_multiplier = rational_from_json(j.at("volume_multiplier"));
    r.convention = parse_convention(j.at("convention").get<std::string>());
    const std::string probability = j.at("probability").get<std::string>();
    if (r.convention == Convention::kPaperDet) {
      r.exact_probability = parse_rational(probability);
      r.probability = to_high_precision(*r.exact_probability);
    } else {
      r.probability = HighPrecision(probability);
    }
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what(), 0);
  }
}

Json reports_to_json(const std::vector<TopologyReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_to_json(r));
  return out;
}

std::vector<TopologyReport> reports_from_json(const Json& j) {
  std::vector<TopologyReport> out;
  for (const Json& entry : j) out.push_back(report_from_json(entry));
  return out;
}

std::string reports_to_csv(const std::vector<TopologyReport>& reports) {
  std::string out = "class,newick,simm,labeled_count,det,convention,probability\n";
  for (std::size_t c = 0; c < reports.size(); ++c) {
    const auto& r = reports[c];
    out += std::to_string(c + 1) + ",\"" + emit_newick(r.topology_class.representative) + "\"," +
           std::to_string(r.topology_class.simm) + "," +
           std::to_string(r.topology_class.labeled_count) + "," + format_rational(r.det()) + "," +
           std::string(to_string(r.convention)) + "," +
           (r.exact_probability ? format_rational(*r.exact_probability)
                                : format_decimal(r.probability, 30)) +
           "\n";
  }
  return out;
}

Json simulation_to_json(const SimulationResult& r) {
  return {
      {"n", r.n},
      {"convention", std::string(to_string(r.convention))},
      {"seed", r.seed},
      {"samples", r.samples},
      {"class_newick", r.class_newick},
      {"counts", r.counts},
      {"frequencies", r.frequencies},
      {"analytic", r.analytic},
      {"chi_square", r.chi_square},
      {"additivity_failures", r.additivity_failures},
      {"round_trip_failures", r.round_trip_failures},
      {"degenerate_samples", r.degenerate_samples},
      {"max_det_relative_error", r.max_det_relative_error},
  };
}

SimulationResult simulation_from_json(const Json& j) {
  try {
    SimulationResult r;
    r.n = j.at("n").get<int>();
    r.convention = parse_convention(j.at("convention").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<std::int64_t>();
    r.class_newick = j.at("class_newick").get<std::vector<std::string>>();
    r.counts = j.at("counts").get<std::vector<std::int64_t>>();
    r.frequencies = j.at("frequencies").get<std::vector<double>>();
    r.analytic = j.at("analytic").get<std::vector<double>>();
    r.chi_square = j.at("chi_square").get<double>();
    r.additivity_failures = j.at("additivity_failures").get<std::int64_t>();
    r.round_trip_failures = j.at("round_trip_failures").get<std::int64_t>();
    r.degenerate_samples = j.at("degenerate_samples").get<std::int64_t>();
    r.max_det_relative_error = j.at("max_det_relative_error").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid simulation JSON: ") + e.what(), 0);
  }
}

}  // namespace fillings
