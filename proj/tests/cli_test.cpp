#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "fillings/cli.hpp"
#include "fillings/io.hpp"
#include "fillings/newick.hpp"

using namespace fillings;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fillings");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("fillings_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream(file) << content;
    return file.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, ProbPaperDetJson) {
  const Result r = run({"prob", "--n", "6", "--convention", "paper-det", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0].at("probability"), "16/19");
  EXPECT_EQ(j[1].at("probability"), "3/19");
  const auto back = reports_from_json(j);
  EXPECT_EQ(*back[0].exact_probability, Rational(16, 19));
}

TEST(Cli, ProbVolumeUsesDecimals) {
  const Result r = run({"prob", "--n", "6", "--convention", "volume", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j[0].at("convention"), "volume");
  EXPECT_EQ(j[0].at("probability").get<std::string>().substr(0, 12), "0.8497788951");
}

TEST(Cli, DetTableShowsFactoredValue) {
  const Result r = run({"det", "--newick", "((1,2),(3,4),(5,6));", "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1/2 * 5^-12"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2.048e-09"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("\033["), std::string::npos);
}

TEST(Cli, DetJsonAgreesAcrossInputs) {
  const Result by_class = run({"det", "--n", "6", "--class-index", "1", "--format", "json"});
  ASSERT_EQ(by_class.code, 0) << by_class.err;
  const Json a = Json::parse(by_class.out);
  EXPECT_EQ(a.at("det"), "4/2197265625");

  const Result by_newick =
      run({"det", "--newick", a.at("newick").get<std::string>(), "--format", "json"});
  ASSERT_EQ(by_newick.code, 0);
  EXPECT_EQ(Json::parse(by_newick.out).at("det"), a.at("det"));

  TempDir dir;
  const std::string tree =
      dir.write("tree.json", topology_to_json(parse_newick("(((1,6),5),((2,3),4));")).dump());
  const Result by_json = run({"det", "--tree-json", tree, "--all-centers", "--format", "json"});
  ASSERT_EQ(by_json.code, 0) << by_json.err;
  EXPECT_EQ(Json::parse(by_json.out).at("det"), a.at("det"));
}

TEST(Cli, RecoverStarWeights) {
  TempDir dir;
  const std::string matrix = dir.write("rho.csv", "3\n3,4\n5\n");
  const Result r = run({"recover", "--newick", "(1,2,3);", "--matrix", matrix, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json w = Json::parse(r.out).at("weights");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].at("weight"), "1/1");
  EXPECT_EQ(w[1].at("weight"), "2/1");
  EXPECT_EQ(w[2].at("weight"), "3/1");
}

TEST(Cli, RecoverNotRealized) {
  TempDir dir;
  const std::string matrix = dir.write("rho.csv", "3\n10,1\n1\n");
  const Result r = run({"recover", "--newick", "(1,2,3);", "--matrix", matrix});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: not-realized: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, ReconstructAndCheckAdditive) {
  TempDir dir;
  const std::string additive = dir.write(
      "d.json", R"({"n": 4, "upper_triangle": [["3", "4", "5"], ["5", "6"], ["7"]]})");
  const Result r = run({"reconstruct", "--matrix", additive, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("newick"), "((1,2),(3,4));");

  const Result ok = run({"check-additive", "--matrix", additive, "--format", "json"});
  EXPECT_EQ(Json::parse(ok.out).at("is_additive"), true);

  const std::string bad = dir.write("bad.csv", "4\n1,10,9\n9,10\n1\n");
  const Result check = run({"check-additive", "--matrix", bad, "--format", "json"});
  ASSERT_EQ(check.code, 0);
  const Json j = Json::parse(check.out);
  EXPECT_EQ(j.at("is_additive"), false);
  EXPECT_EQ(j.at("witness"), Json({1, 2, 3, 4}));

  const Result fail = run({"reconstruct", "--matrix", bad});
  EXPECT_EQ(fail.code, 1);
  EXPECT_EQ(fail.err.rfind("error: non-additive: ", 0), 0u);
}

TEST(Cli, RatioAndFamily) {
  const Result r = run({"ratio", "--newick", "(((1,6),5),((2,3),4));", "--newick",
                        "((1,2),(3,4),(5,6));", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("ratio"), "16/3");

  const Result v = run({"ratio", "--newick", "(((1,6),5),((2,3),4));", "--newick",
                        "((1,2),(3,4),(5,6));", "--convention", "volume", "--format", "json"});
  EXPECT_EQ(Json::parse(v.out).at("ratio"), "4 * sqrt(2)");

  const Result f = run({"family", "--n", "12", "--format", "json"});
  ASSERT_EQ(f.code, 0) << f.err;
  const Json j = Json::parse(f.out);
  EXPECT_EQ(j.at("symmetric_to_path_ratio").at("constructed"), "4/3");
  EXPECT_EQ(j.at("symmetric").at("matches"), true);
  for (const Json& row : j.at("path")) {
    EXPECT_EQ(row.at("matches_squared_factorial"), true);
    EXPECT_EQ(row.at("matches_as_printed"), false);
  }
}

TEST(Cli, EnumerateFormats) {
  const Result json = run({"enumerate", "--n", "6", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  const Json j = Json::parse(json.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1].at("simm"), 48);
  EXPECT_TRUE(topology_from_json(j[0].at("topology")) ==
              topology_from_json(j[0].at("topology")));

  const Result csv = run({"enumerate", "--n", "5", "--labeled", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 16);
  EXPECT_EQ(csv.out.substr(0, 13), "index,newick\n");
}

TEST(Cli, OracleIsDeterministic) {
  const std::vector<std::string> args{"oracle", "--n", "5", "--seed", "7", "--samples", "400",
                                      "--format", "json"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const SimulationResult r = simulation_from_json(Json::parse(a.out));
  EXPECT_EQ(r.samples, 400);
  EXPECT_EQ(r.counts[0], 400);
}

TEST(Cli, OutputFile) {
  TempDir dir;
  const std::string out = dir.path("out.json");
  const Result r = run({"prob", "--n", "5", "--out", out, "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(Json::parse(in)[0].at("probability"), "1/1");
}

TEST(Cli, ErrorsAndUsage) {
  const Result guard = run({"prob", "--n", "12"});
  EXPECT_EQ(guard.code, 1);
  EXPECT_NE(guard.err.find("--force"), std::string::npos);

  EXPECT_EQ(run({"enumerate", "--n", "11", "--force", "--format", "csv"}).code, 0);

  const Result parse = run({"det", "--newick", "((1,2),3"});
  EXPECT_EQ(parse.code, 1);
  EXPECT_EQ(parse.err.rfind("error: parse: ", 0), 0u);

  EXPECT_EQ(run({"det"}).code, 1);
  EXPECT_EQ(run({"det", "--n", "6", "--class-index", "3"}).code, 1);
  EXPECT_EQ(run({"recover", "--newick", "(1,2,3);", "--matrix", "/nonexistent"}).code, 1);
  EXPECT_EQ(run({"family", "--n", "5"}).code, 1);

  const Result unknown = run({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"prob", "--n", "6", "--bogus"}).code, 2);
  EXPECT_EQ(run({"prob", "--n", "6", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"prob", "--n", "6", "--convention", "sqrt"}).code, 2);
  EXPECT_EQ(run({"prob"}).code, 2);

  const Result help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("enumerate"), std::string::npos);
}

TEST(Cli, BinaryDefaultsToJsonWhenPiped) {
  const std::string command = std::string(FILLINGS_BINARY) + " prob --n 6 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string output;
  char buffer[512];
  while (std::fgets(buffer, sizeof buffer, pipe)) output += buffer;
  const int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(Json::parse(output)[0].at("probability"), "16/19");

  const std::string usage = std::string(FILLINGS_BINARY) + " nope >/dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(usage.c_str())), 2);
}
