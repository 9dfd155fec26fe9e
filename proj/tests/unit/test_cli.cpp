#include "zen/cli.hpp"
#include "zen/log.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome zen_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "zen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  zen::WarningCapture quiet;
  const int code = zen::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Triangle plus a pendant: 6 nodes, 2 classes.
struct ToyFiles {
  fs::path dir = fs::temp_directory_path() / "zen_cli_test";
  ToyFiles() {
    fs::create_directories(dir);
    std::ofstream(dir / "tri.hg") << "0 1\n1 2\n0 2\n";
    std::ofstream(dir / "toy.hg") << "# toy\n0 1 2\n2 3\n3 4 5\n0 5\n1 4\n";
    std::ofstream(dir / "toy.csv") << "a,b,c\n1,0,0\n1,0,1\n1,1,0\n0,1,1\n0,1,0\n0,0,1\n";
    std::ofstream(dir / "toy.labels") << "node,label\n0,x\n1,x\n2,x\n3,y\n4,y\n5,y\n";
  }
  ~ToyFiles() { fs::remove_all(dir); }
  std::string p(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("seed lists") {
  CHECK(zen::cli::parse_seeds("0..3") == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(zen::cli::parse_seeds("5") == std::vector<std::uint64_t>{5});
  CHECK(zen::cli::parse_seeds("1,4,7..8") == std::vector<std::uint64_t>{1, 4, 7, 8});
  CHECK_THROWS(zen::cli::parse_seeds("3..1"));
  CHECK_THROWS(zen::cli::parse_seeds("a"));
  CHECK_THROWS(zen::cli::parse_seeds(""));
}

TEST_CASE("run: json output and variants") {
  ToyFiles f;
  auto r = zen_cli({"run", "--edges", f.p("toy.hg"), "--features", f.p("toy.csv"), "--labels", f.p("toy.labels"),
                    "--k", "1", "--seeds", "0..4", "--format", "json", "--grid-denominator", "3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["per_seed"].size() == 5);
  CHECK(j["variant"] == "full");
  CHECK(j["k"] == 1);

  r = zen_cli({"run", "--edges", f.p("toy.hg"), "--features", f.p("toy.csv"), "--labels", f.p("toy.labels"), "--k",
               "1", "--seeds", "0", "--variant", "no_rap", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["variant"] == "no_rap");

  r = zen_cli({"run", "--edges", f.p("toy.hg"), "--features", f.p("toy.csv"), "--labels", f.p("toy.labels"), "--k",
               "1", "--seeds", "0..2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("test acc") != std::string::npos);
}

TEST_CASE("run: determinism and --out") {
  ToyFiles f;
  const std::vector<std::string> args{"run",      "--edges",  f.p("toy.hg"), "--features", f.p("toy.csv"),
                                      "--labels", f.p("toy.labels"), "--k", "1", "--seeds", "0..9",
                                      "--format", "json",   "--out",  f.p("a.json")};
  REQUIRE(zen_cli(args).code == 0);
  auto b = args;
  b.back() = f.p("b.json");
  b.push_back("--threads");
  b.push_back("3");
  REQUIRE(zen_cli(b).code == 0);
  std::ifstream fa(f.p("a.json")), fb(f.p("b.json"));
  const std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(!sa.empty());
  CHECK(sa == sb);
}

TEST_CASE("errors and exit codes") {
  ToyFiles f;
  auto r = zen_cli({"run", "--edges", "/no/such/file.hg", "--features", f.p("toy.csv"), "--labels",
                    f.p("toy.labels")});
  CHECK(r.code == 2);
  CHECK(r.err.find("/no/such/file.hg") != std::string::npos);
  CHECK(zen_cli({"run", "--bogus"}).code == 2);
  CHECK(zen_cli({}).code == 2);
  CHECK(zen_cli({"run", "--edges", f.p("toy.hg"), "--features", f.p("toy.csv"), "--labels", f.p("toy.labels"),
                 "--k", "5"})
            .code == 2);  // not enough nodes per class
  std::ofstream(f.dir / "bad.hg") << "0 1\n1 q\n";
  r = zen_cli({"rsi", "--edges", f.p("bad.hg"), "--node", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  r = zen_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("run") != std::string::npos);
  r = zen_cli({"run", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--edges", "--features", "--labels", "--k", "--seeds", "--grid-denominator", "--variant",
                           "--norm", "--threads", "--format", "--out"}) {
    CHECK(r.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("rsi command") {
  ToyFiles f;
  auto r = zen_cli({"rsi", "--edges", f.p("tri.hg"), "--node", "0", "--l", "1"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["target"] == "rap_hat");

  r = zen_cli({"rsi", "--edges", f.p("tri.hg"), "--node", "0", "--l", "1", "--method", "walk", "--trials", "100000"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["target"] == "walk_matrix");
  CHECK(j["exact"].get<double>() == doctest::Approx(0.5));
  CHECK(std::abs(j["value"].get<double>() - 0.5) < 0.005);

  r = zen_cli({"rsi", "--edges", f.p("toy.hg"), "--node", "2", "--l", "3"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(j["exact"].get<double>()));

  r = zen_cli({"rsi", "--edges", f.p("tri.hg"), "--node", "1", "--l", "2", "--method", "hutchinson", "--probes",
               "20000"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(nlohmann::json::parse(r.out)["value"].get<double>() - 1.0) < 0.05);
  CHECK(zen_cli({"rsi", "--edges", f.p("tri.hg"), "--node", "9"}).code == 2);
}

TEST_CASE("explain, errbound and matrix commands") {
  ToyFiles f;
  auto r = zen_cli({"explain", "--edges", f.p("toy.hg"), "--features", f.p("toy.csv"), "--labels",
                    f.p("toy.labels"), "--k", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("feature,x,y\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

  r = zen_cli({"errbound", "--epsilon", "0.1", "--k", "5", "--c", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "1.14%\n");
  CHECK(zen_cli({"errbound", "--epsilon", "0.7"}).code == 2);

  r = zen_cli({"matrix", "--edges", f.p("tri.hg"), "--which", "A1_star"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  CHECK(r.out.rfind("0 1 0.5", 0) == 0);
}
