#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dikin/cli.hpp"
#include "dikin/verify.hpp"
#include "dikin/walk.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dikin");
  std::ostringstream out, err;
  const int code = dikin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dikin_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

std::map<std::string, std::string> read_stats(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon != std::string::npos) kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return kv;
}

}  // namespace

TEST_CASE("no command or unknown command is a usage error") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gen") {
  const Result r = run({"gen", "--spec", "cube:1"});
  CHECK(r.code == 0);
  CHECK(r.out == "2 1\n1 0\n-1 -1\n");
  CHECK(run({"gen", "--spec", "cube:0"}).code == 2);
  CHECK(run({"gen"}).code == 2);

  TempDir tmp;
  const std::string file = tmp.file("r.txt");
  REQUIRE(run({"gen", "--spec", "random:8,2,7", "--out", file}).code == 0);
  CHECK(dikin::parse_polytope(slurp(file)) == dikin::generate(dikin::RandomSpec{8, 2, 7}));
}

TEST_CASE("center") {
  const Result sq = run({"center", "--gen", "cube:2"});
  REQUIRE(sq.code == 0);
  std::istringstream in(sq.out);
  double a = 0, b = 0;
  in >> a >> b;
  CHECK(a == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(b == doctest::Approx(0.5).epsilon(1e-6));

  const Result tri = run({"center", "--gen", "simplex:2", "--start", "0.1,0.1"});
  REQUIRE(tri.code == 0);
  CHECK(count_lines(tri.out) == 2);
  std::istringstream tin(tri.out);
  tin >> a >> b;
  CHECK(std::abs(a - 1.0 / 3.0) <= 1e-6);
  CHECK(std::abs(b - 1.0 / 3.0) <= 1e-6);

  CHECK(run({"center", "--gen", "cube:2", "--start", "0,0.5"}).code == 2);
  CHECK(run({"center", "--gen", "cube:2", "--start", "0.5"}).code == 2);
  CHECK(run({"center", "--gen", "cube:2", "--polytope", "x.txt"}).code == 2);

  TempDir tmp;
  const std::string file = tmp.file("shifted.txt");
  std::ofstream(file) << "# square [2,3]^2\n4 2\n1 0 2\n0 1 2\n-1 0 -3\n0 -1 -3\n";
  const Result sh = run({"center", "--polytope", file});
  REQUIRE(sh.code == 0);
  std::istringstream sin(sh.out);
  sin >> a >> b;
  CHECK(std::abs(a - 2.5) <= 1e-6);
  CHECK(std::abs(b - 2.5) <= 1e-6);
}

TEST_CASE("sample: row count, header and stats") {
  TempDir tmp;
  const std::string csv = tmp.file("s.csv"), stats = tmp.file("s.stats");
  const Result r = run({"sample", "--gen", "cube:2", "--steps", "200000", "--burnin", "10000", "--thin", "10",
                        "--radius", "0.3", "--seed", "1", "--out", csv, "--stats", stats});
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("x1,x2\n", 0) == 0);
  CHECK(count_lines(text) == 19000 + 1);

  const auto kv = read_stats(stats);
  CHECK(kv.at("radius") == "0.3");
  CHECK(kv.at("steps") == "200000");
  CHECK(kv.at("samples") == "19000");
  CHECK(std::stoull(kv.at("lazy_stays")) + std::stoull(kv.at("proposals")) == 200000);
  CHECK(std::stoull(kv.at("mixing_steps_scale")) == dikin::mixing_steps(4, 2, 0.3));
}

TEST_CASE("sample: epsilon routes through the default radius") {
  TempDir tmp;
  const std::string stats = tmp.file("e.stats");
  const Result r = run({"sample", "--gen", "cube:2", "--epsilon", "0.5", "--steps", "100", "--out",
                        tmp.file("e.csv"), "--stats", stats});
  REQUIRE(r.code == 0);
  CHECK(std::stod(read_stats(stats).at("radius")) == doctest::Approx(8.523353919594511e-05).epsilon(1e-12));
  CHECK(run({"sample", "--gen", "cube:2", "--epsilon", "0.5", "--radius", "0.1"}).code == 2);
  CHECK(run({"sample", "--gen", "cube:2", "--epsilon", "0.9"}).code == 2);
}

TEST_CASE("sample: malformed polytope file names the line") {
  TempDir tmp;
  const std::string bad = tmp.file("bad.txt");
  std::ofstream(bad) << "3 2\n1 0 0\n0 1\n-1 -1 -1\n";
  const Result r = run({"sample", "--polytope", bad, "--steps", "10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"sample", "--polytope", tmp.file("missing.txt")}).code == 2);
  CHECK(run({"sample", "--gen", "cube:2", "--steps", "10", "--burnin", "20"}).code == 2);
  CHECK(run({"sample", "--gen", "cube:2", "--laziness", "2"}).code == 2);
}

TEST_CASE("sample: deterministic CSV and DIKIN_SEED fallback") {
  TempDir tmp;
  auto sample = [&](const std::string& name, std::vector<std::string> extra) {
    std::vector<std::string> args = {"sample", "--gen", "simplex:3", "--steps", "3000", "--chains", "2",
                                     "--out", tmp.file(name)};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(run(args).code == 0);
    return slurp(tmp.file(name));
  };
  const std::string a = sample("a.csv", {"--seed", "42"});
  const std::string b = sample("b.csv", {"--seed", "42"});
  CHECK(a == b);
  CHECK(count_lines(a) == 1 + 2 * 3000);
  CHECK(a != sample("c.csv", {"--seed", "43"}));

  ::setenv("DIKIN_SEED", "42", 1);
  const std::string env = sample("d.csv", {});
  ::unsetenv("DIKIN_SEED");
  CHECK(env == a);
  CHECK(sample("e.csv", {}) == sample("f.csv", {"--seed", "1"}));
}

TEST_CASE("verify") {
  const Result one = run({"verify", "--checks", "isserlis", "--seed", "1"});
  CHECK(one.code == 0);
  CHECK(count_lines(one.out) == 1);
  CHECK(one.out.rfind("isserlis", 0) == 0);
  CHECK(one.out.find("PASS") != std::string::npos);

  CHECK(run({"verify", "--epsilon", "0.9"}).code == 2);
  CHECK(run({"verify", "--checks", "bogus"}).code == 2);
  CHECK(run({"verify", "--samples", "1"}).code == 2);

  const Result list = run({"verify", "--list"});
  CHECK(list.code == 0);
  CHECK(count_lines(list.out) == dikin::verify::suite_check_names().size());

  const Result x = run({"verify", "--checks", "proposal_tv,isserlis", "--samples", "5000", "--seed", "3"});
  const Result y = run({"verify", "--checks", "proposal_tv,isserlis", "--samples", "5000", "--seed", "3"});
  CHECK(x.out == y.out);
  CHECK(count_lines(x.out) == 2);
}

#ifdef DIKIN_TOOL_PATH
TEST_CASE("installed binary runs and reports exit codes") {
  const std::string tool = DIKIN_TOOL_PATH;
  CHECK(std::system((tool + " gen --spec simplex:2 > /dev/null").c_str()) == 0);
  const int code = std::system((tool + " gen --spec cube:0 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}
#endif
