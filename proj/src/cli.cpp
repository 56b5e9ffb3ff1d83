#include "fillings/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fillings/determinant.hpp"
#include "fillings/errors.hpp"
#include "fillings/io.hpp"
#include "fillings/newick.hpp"
#include "fillings/oracle.hpp"
#include "fillings/probability.hpp"
#include "fillings/recovery.hpp"

namespace fillings::cli {
namespace {

enum class Format { kJson, kCsv, kTable };

/// A command result in both machine and human shape.
struct Output {
  Json json;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Options {
  std::string format;
  std::string out_path;
  int n = 0;
  int k = 0;
  int class_index = 0;
  int max_n = kDefaultMaxLeaves;
  bool force = false;
  bool labeled = false;
  bool all_centers = false;
  std::vector<std::string> newick;
  std::string tree_json;
  std::string matrix_path;
  std::string convention = "paper-det";
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  double tolerance = 1e-9;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

void render(const Output& output, Format format, bool color, std::ostream& out) {
  if (format == Format::kJson) {
    out << output.json.dump(2) << "\n";
    return;
  }
  if (format == Format::kCsv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << "\n";
    };
    line(output.header);
    for (const auto& row : output.rows) line(row);
    return;
  }
  std::vector<std::size_t> width(output.header.size(), 0);
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = output.header[i].size();
  for (const auto& row : output.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells, bool bold) {
    if (bold && color) out << "\033[1m";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    if (bold && color) out << "\033[0m";
    out << "\n";
  };
  line(output.header, true);
  for (const auto& row : output.rows) line(row, false);
}

std::string decimal(const Rational& value, int digits = 12) {
  return format_decimal(to_high_precision(value), digits);
}

void guard_size(const Options& o) {
  if (o.n > o.max_n && !o.force) {
    throw DomainError("n = " + std::to_string(o.n) + " exceeds --max-n " +
                      std::to_string(o.max_n) + "; pass --force to run anyway");
  }
}

int leaf_limit(const Options& o) { return o.force ? std::max(o.n, o.max_n) : o.max_n; }

DistanceMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open matrix file '" + path + "'");
  return read_distance_matrix(in);
}

Topology load_tree(const Options& o, std::size_t which = 0) {
  if (o.newick.size() > which) return parse_newick(o.newick[which]);
  if (!o.tree_json.empty() && which == 0) {
    std::ifstream in(o.tree_json);
    if (!in) throw DomainError("cannot open tree file '" + o.tree_json + "'");
    try {
      return topology_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
  }
  if (o.n > 0 && o.class_index > 0 && which == 0) {
    guard_size(o);
    auto classes = enumerate_topology_classes(o.n);
    if (o.class_index > static_cast<int>(classes.size())) {
      throw DomainError("class index " + std::to_string(o.class_index) + " out of range 1.." +
                        std::to_string(classes.size()));
    }
    return classes[o.class_index - 1].representative;
  }
  throw DomainError("a tree is required: --newick, --tree-json, or --n with --class-index");
}

Output cmd_enumerate(const Options& o) {
  guard_size(o);
  Output output;
  output.json = Json::array();
  if (o.labeled) {
    output.header = {"index", "newick"};
    int index = 0;
    for_each_labeled_topology(o.n, [&](const Topology& t) {
      ++index;
      const std::string newick = emit_newick(t);
      output.json.push_back({{"index", index}, {"newick", newick}, {"topology", topology_to_json(t)}});
      output.rows.push_back({std::to_string(index), newick});
    });
    return output;
  }
  output.header = {"class", "newick", "simm", "labeled_count", "mustaches"};
  int index = 0;
  for (const TopologyClass& cls : enumerate_topology_classes(o.n)) {
    ++index;
    const std::string newick = emit_newick(cls.representative);
    const int mustaches = mustache_count(cls.representative);
    output.json.push_back({{"class", index},
                           {"newick", newick},
                           {"simm", cls.simm},
                           {"labeled_count", cls.labeled_count},
                           {"mustaches", mustaches},
                           {"topology", topology_to_json(cls.representative)}});
    output.rows.push_back({std::to_string(index), newick, std::to_string(cls.simm),
                           std::to_string(cls.labeled_count), std::to_string(mustaches)});
  }
  return output;
}

Output cmd_det(const Options& o) {
  const Topology t = load_tree(o);
  const Rational exact = exact_determinant(gram_matrix<Rational>(t));
  const Rational closed =
      o.all_centers ? closed_form_determinant_all_centers(t) : closed_form_determinant(t);
  if (exact != closed) {
    throw std::logic_error("product formula " + format_rational(closed) +
                           " disagrees with elimination " + format_rational(exact));
  }
  const VolumeValue volume{exact, t.edge_count()};
  Output output;
  output.json = {{"newick", emit_newick(t)},
                 {"det", format_rational(exact)},
                 {"det_decimal", decimal(exact)},
                 {"closed_form_det", format_rational(closed)},
                 {"dimension", volume.dimension},
                 {"volume", format_decimal(volume.volume(), 30)},
                 {"simm", automorphism_order(t)}};
  output.header = {"quantity", "value"};
  output.rows = {{"newick", emit_newick(t)},
                 {"det", format_rational_factored(exact)},
                 {"det (p/q)", format_rational(exact)},
                 {"det (decimal)", decimal(exact)},
                 {"closed form", format_rational_factored(closed) + " (matches)"},
                 {"dimension", std::to_string(volume.dimension)},
                 {"volume", format_decimal(volume.volume(), 30)},
                 {"simm", std::to_string(automorphism_order(t))}};
  return output;
}

Output cmd_prob(const Options& o) {
  guard_size(o);
  const auto reports = topology_probabilities(o.n, parse_convention(o.convention), leaf_limit(o));
  Output output;
  output.json = reports_to_json(reports);
  output.header = {"class", "newick", "simm", "labeled_count", "det", "probability"};
  for (std::size_t c = 0; c < reports.size(); ++c) {
    const auto& r = reports[c];
    output.rows.push_back(
        {std::to_string(c + 1), emit_newick(r.topology_class.representative),
         std::to_string(r.topology_class.simm), std::to_string(r.topology_class.labeled_count),
         format_rational_factored(r.det()),
         r.exact_probability ? format_rational(*r.exact_probability) + " (" +
                                   format_decimal(r.probability, 12) + ")"
                             : format_decimal(r.probability, 30)});
  }
  return output;
}

Output cmd_ratio(const Options& o) {
  if (o.newick.size() != 2) throw DomainError("ratio needs exactly two --newick trees");
  const Topology first = parse_newick(o.newick[0]);
  const Topology second = parse_newick(o.newick[1]);
  const Convention convention = parse_convention(o.convention);
  const SurdValue ratio = probability_ratio(first, second, convention);
  const Rational det_ratio = closed_form_determinant(first) / closed_form_determinant(second);
  Output output;
  output.json = {{"first", emit_newick(first)},
                 {"second", emit_newick(second)},
                 {"convention", std::string(to_string(convention))},
                 {"ratio", ratio.to_string()},
                 {"ratio_coefficient", format_rational(ratio.coefficient)},
                 {"ratio_radicand", format_rational(ratio.radicand)},
                 {"ratio_decimal", format_decimal(ratio.to_high_precision(), 30)},
                 {"det_ratio", format_rational(det_ratio)}};
  output.header = {"quantity", "value"};
  output.rows = {{"first", emit_newick(first)},
                 {"second", emit_newick(second)},
                 {"convention", std::string(to_string(convention))},
                 {"probability ratio", ratio.to_string()},
                 {"decimal", format_decimal(ratio.to_high_precision(), 30)},
                 {"det ratio", format_rational(det_ratio)}};
  return output;
}

Output weights_output(const Topology& t, const WeightDistribution& w, Json extra) {
  Output output;
  output.json = std::move(extra);
  output.json["weights"] = weights_to_json(t, w);
  output.header = {"edge", "endpoints", "weight"};
  auto name = [&](Vertex v) {
    return t.is_leaf(v) ? std::to_string(t.label(v)) : "v" + std::to_string(v);
  };
  for (int i = 0; i < t.edge_count(); ++i) {
    output.rows.push_back({std::to_string(i + 1), name(t.edge(i).u) + "-" + name(t.edge(i).v),
                           format_rational(w(i))});
  }
  return output;
}

Output cmd_recover(const Options& o) {
  const Topology t = load_tree(o);
  if (o.matrix_path.empty()) throw DomainError("recover needs --matrix");
  const WeightDistribution w = recover_weights(t, load_matrix(o.matrix_path));
  return weights_output(t, w, {{"newick", emit_newick(t)}, {"topology", topology_to_json(t)}});
}

Output cmd_reconstruct(const Options& o) {
  if (o.matrix_path.empty()) throw DomainError("reconstruct needs --matrix");
  const auto [t, w] = reconstruct_topology(load_matrix(o.matrix_path));
  Output output =
      weights_output(t, w, {{"newick", emit_newick(t)}, {"topology", topology_to_json(t)}});
  output.rows.insert(output.rows.begin(), {"tree", "", emit_newick(t)});
  return output;
}

Output cmd_check_additive(const Options& o) {
  if (o.matrix_path.empty()) throw DomainError("check-additive needs --matrix");
  const AdditivityReport report = check_additivity(load_matrix(o.matrix_path));
  Output output;
  output.json = {{"is_additive", report.is_additive},
                 {"witness", report.witness ? Json(*report.witness) : Json(nullptr)}};
  std::string witness = "-";
  if (report.witness) {
    const auto& w = *report.witness;
    witness = std::to_string(w[0]) + " " + std::to_string(w[1]) + " " + std::to_string(w[2]) +
              " " + std::to_string(w[3]);
  }
  output.header = {"is_additive", "witness"};
  output.rows = {{report.is_additive ? "true" : "false", witness}};
  return output;
}

Output cmd_family(const Options& o) {
  const int n = o.n;
  if (n < 6) throw DomainError("three-mustache families need n >= 6");
  Output output;
  output.json = {{"n", n}};
  output.header = {"member", "closed form", "closed form (squared factorial)", "constructed"};

  if (n % 2 == 0) {
    const Rational closed_form = three_mustache_symmetric_det(n);
    const Rational constructed = closed_form_determinant(three_mustache_tree(n, (n - 2) / 2));
    output.json["symmetric"] = {{"k", (n - 2) / 2},
                                {"closed_form", format_rational(closed_form)},
                                {"constructed", format_rational(constructed)},
                                {"matches", closed_form == constructed}};
    output.rows.push_back({"symmetric k=" + std::to_string((n - 2) / 2),
                           format_rational_factored(closed_form), "-",
                           format_rational_factored(constructed)});
  }

  Json path = Json::array();
  const int k_first = o.k > 0 ? o.k : 2;
  const int k_last = o.k > 0 ? o.k : n - 4;
  for (int k = k_first; k <= k_last; ++k) {
    const PathFamilyDeterminant det = three_mustache_path_det(n, k);
    path.push_back({{"k", k},
                    {"as_printed", format_rational(det.as_printed)},
                    {"squared_factorial", format_rational(det.squared_factorial)},
                    {"constructed", format_rational(det.constructed)},
                    {"matches_as_printed", det.as_printed == det.constructed},
                    {"matches_squared_factorial", det.squared_factorial == det.constructed}});
    output.rows.push_back({"path k=" + std::to_string(k), format_rational_factored(det.as_printed),
                           format_rational_factored(det.squared_factorial),
                           format_rational_factored(det.constructed)});
  }
  output.json["path"] = path;

  if (n % 2 == 0 && n >= 8) {
    const Rational ratio = symmetric_to_path_ratio(n);
    const Rational closed_form = Rational(n * n, 12 * (n - 3));
    output.json["symmetric_to_path_ratio"] = {{"constructed", format_rational(ratio)},
                                              {"closed_form", format_rational(closed_form)},
                                              {"matches", ratio == closed_form}};
    output.rows.push_back({"ratio symmetric/k=2", format_rational(closed_form), "-",
                           format_rational(ratio)});
  }
  return output;
}

Output cmd_oracle(const Options& o) {
  OracleConfig config{o.seed, o.samples, o.tolerance};
  const SimulationResult result =
      simulate_class_frequencies(o.n, parse_convention(o.convention), config);
  Output output;
  output.json = simulation_to_json(result);
  output.header = {"class", "newick", "count", "frequency", "analytic"};
  for (std::size_t c = 0; c < result.counts.size(); ++c) {
    std::ostringstream freq, analytic;
    freq.precision(6);
    analytic.precision(6);
    freq << result.frequencies[c];
    analytic << result.analytic[c];
    output.rows.push_back({std::to_string(c + 1), result.class_newick[c],
                           std::to_string(result.counts[c]), freq.str(), analytic.str()});
  }
  std::ostringstream summary;
  summary << "chi2=" << result.chi_square << " additivity_failures=" << result.additivity_failures
          << " round_trip_failures=" << result.round_trip_failures
          << " max_det_rel_err=" << result.max_det_relative_error;
  output.rows.push_back({"-", summary.str(), "", "", ""});
  return output;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const NotRealizedError*>(&e)) return "not-realized";
  if (dynamic_cast<const NonAdditiveError*>(&e)) return "non-additive";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  return "internal";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability measure on topologies of minimal fillings of additive metric spaces",
               "fillings"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", o.out_path, "Write output to a file instead of standard output");

  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", o.n, "Number of boundary points")->check(CLI::Range(3, 64));
    if (required) opt->required();
  };
  auto add_guard = [&](CLI::App* sub) {
    sub->add_option("--max-n", o.max_n, "Largest n allowed without --force");
    sub->add_flag("--force", o.force, "Allow n above --max-n");
  };
  auto add_tree = [&](CLI::App* sub) {
    sub->add_option("--newick", o.newick, "Tree in Newick format");
    sub->add_option("--tree-json", o.tree_json, "Tree as topology JSON file");
  };
  auto add_convention = [&](CLI::App* sub) {
    sub->add_option("--convention", o.convention, "paper-det or volume")
        ->check(CLI::IsMember({"paper-det", "volume"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "List topology classes or labeled trees");
  add_n(enumerate, true);
  add_guard(enumerate);
  enumerate->add_flag("--labeled", o.labeled, "List every labeled topology");

  auto* det = app.add_subcommand("det", "Exact Gram determinant of one tree");
  add_tree(det);
  add_n(det, false);
  add_guard(det);
  det->add_option("--class-index", o.class_index, "One-based class index for --n")
      ->check(CLI::PositiveNumber);
  det->add_flag("--all-centers", o.all_centers, "Check the product formula at every center");

  auto* prob = app.add_subcommand("prob", "Topology class probabilities");
  add_n(prob, true);
  add_guard(prob);
  add_convention(prob);

  auto* ratio = app.add_subcommand("ratio", "Probability ratio of two trees");
  ratio->add_option("--newick", o.newick, "Two trees in Newick format")->required()->expected(2);
  add_convention(ratio);

  auto* recover = app.add_subcommand("recover", "Edge weights of a tree from a distance matrix");
  add_tree(recover);
  recover->add_option("--matrix", o.matrix_path, "Distance matrix (CSV or JSON)")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Generating tree of an additive matrix");
  reconstruct->add_option("--matrix", o.matrix_path, "Distance matrix (CSV or JSON)")->required();

  auto* check = app.add_subcommand("check-additive", "Four-point condition check");
  check->add_option("--matrix", o.matrix_path, "Distance matrix (CSV or JSON)")->required();

  auto* family = app.add_subcommand("family", "Three-mustache family determinants");
  add_n(family, true);
  family->add_option("--k", o.k, "Position of the middle mustache")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "Monte-Carlo class frequencies");
  add_n(oracle, true);
  add_convention(oracle);
  oracle->add_option("--seed", o.seed, "Random seed");
  oracle->add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
  oracle->add_option("--tolerance", o.tolerance, "Relative float tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n" << app.help();
    return 2;
  }

  const bool to_terminal = o.out_path.empty() && &out == &std::cout && isatty(STDOUT_FILENO);
  Format format = to_terminal ? Format::kTable : Format::kJson;
  if (o.format == "json") format = Format::kJson;
  if (o.format == "csv") format = Format::kCsv;
  if (o.format == "table") format = Format::kTable;
  const bool color = to_terminal && std::getenv("NO_COLOR") == nullptr;

  try {
    Output output;
    if (*enumerate) output = cmd_enumerate(o);
    else if (*det) output = cmd_det(o);
    else if (*prob) output = cmd_prob(o);
    else if (*ratio) output = cmd_ratio(o);
    else if (*recover) output = cmd_recover(o);
    else if (*reconstruct) output = cmd_reconstruct(o);
    else if (*check) output = cmd_check_additive(o);
    else if (*family) output = cmd_family(o);
    else output = cmd_oracle(o);

    if (o.out_path.empty()) {
      render(output, format, color, out);
    } else {
      std::ofstream file(o.out_path);
      if (!file) throw DomainError("cannot write '" + o.out_path + "'");
      render(output, format, false, file);
    }
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    err << "error: " << error_kind(e) << ": " << message << "\n";
    return 1;
  }
  return 0;
}

}  // namespace fillings::cli
