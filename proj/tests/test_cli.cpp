#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cutlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"cutlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cutlab::run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("cutlab_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({}) == 2);
  CHECK(run({"flip"}) == 2);  // missing --graph
}

TEST_CASE("domain errors exit with 1") {
  TempDir tmp;
  spit(tmp.path("bad.mc"), "p maxcut 2 1\ne 0 2 5\n");
  CHECK(run({"check", "--graph", tmp.path("bad.mc"), "--partition", tmp.path("bad.mc")}) == 1);
}

TEST_CASE("compile / flip / check pipeline") {
  TempDir tmp;
  spit(tmp.path("c.ckt"),
       "input 1\ngate 2 NOT 1\ngate 3 NOT 2\ngate 4 NOT 3\noutputs 4\n");
  CHECK(run({"compile", "--circuit", tmp.path("c.ckt"), "--mode", "cvp", "--assignment", "1",
             "--out", tmp.path("g.mc"), "--role-map", tmp.path("rm.json")}) == 0);
  CHECK(slurp(tmp.path("g.mc")).rfind("p maxcut 10 9", 0) == 0);
  CHECK(slurp(tmp.path("rm.json")).find("cutlab/1") != std::string::npos);

  CHECK(run({"flip", "--graph", tmp.path("g.mc"), "--rule", "random", "--seed", "9", "--out",
             tmp.path("t1.json")}) == 0);
  CHECK(run({"flip", "--graph", tmp.path("g.mc"), "--rule", "random", "--seed", "9", "--out",
             tmp.path("t2.json")}) == 0);
  CHECK(slurp(tmp.path("t1.json")) == slurp(tmp.path("t2.json")));  // seeded determinism

  spit(tmp.path("p.txt"), "0101010101\n");
  CHECK(run({"check", "--graph", tmp.path("g.mc"), "--partition", tmp.path("p.txt"), "--out",
             tmp.path("check.json")}) == 0);
  CHECK(slurp(tmp.path("check.json")).find("\"local_optimum\": true") != std::string::npos);

  CHECK(run({"enumerate", "--graph", tmp.path("g.mc"), "--out", tmp.path("opt.json")}) == 0);
  CHECK(slurp(tmp.path("opt.json")).find("\"count\": 1") != std::string::npos);
}

TEST_CASE("degrade and verify-theorem1 commands") {
  TempDir tmp;
  spit(tmp.path("star.mc"), "p maxcut 4 3\ne 1 2 8\ne 1 3 8\ne 1 4 2\n");
  CHECK(run({"degrade", "--graph", tmp.path("star.mc"), "--node", "1", "--biaser", "4", "--out",
             tmp.path("deg.mc"), "--node-map", tmp.path("nm.json")}) == 0);
  CHECK(slurp(tmp.path("nm.json")).find("\"entry1\"") != std::string::npos);
  CHECK(run({"verify-theorem1", "--m", "1", "--out", tmp.path("v.json")}) == 0);
  CHECK(slurp(tmp.path("v.json")).find("\"pass\": true") != std::string::npos);
}

TEST_CASE("claim17 and cubic-bench commands") {
  TempDir tmp;
  CHECK(run({"claim17", "--k", "2", "--subset", "1", "--samples", "20000", "--seed", "4", "--out",
             tmp.path("c17.json")}) == 0);
  CHECK(run({"cubic-bench", "--sizes", "50,100", "--starts", "3", "--seed", "6", "--out",
             tmp.path("cb.json")}) == 0);
  CHECK(slurp(tmp.path("cb.json")).find("loglog_slope") != std::string::npos);
}

TEST_CASE("smooth command emits a reproducible report") {
  TempDir tmp;
  const std::vector<std::string> args{"smooth", "--sizes", "16",     "--sigmas", "0.1",
                                      "--trials", "3",     "--seed", "12"};
  auto with_out = [&](const std::string& out) {
    auto a = args;
    a.push_back("--out");
    a.push_back(out);
    return a;
  };
  CHECK(run(with_out(tmp.path("s1.json"))) == 0);
  CHECK(run(with_out(tmp.path("s2.json"))) == 0);
  CHECK(slurp(tmp.path("s1.json")) == slurp(tmp.path("s2.json")));
}
