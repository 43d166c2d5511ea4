#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"
#include "pathrank/graph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(PATHRANK_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

// Fixture files live in a per-run temp directory, written once.
const fs::path& fixture_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pathrank-cli-fixtures";
    fs::create_directories(d);
    auto put = [&](const char* name, const std::string& text) {
      std::ofstream f(d / name);
      f << text;
    };
    put("chain.json",
        R"({"vertices":["a","b","c"],
            "edges":[{"from":"a","to":"b","w":1},{"from":"b","to":"c","w":2}]})");
    put("loop.json",
        R"({"vertices":["v1","a","v2"],
            "edges":[{"from":"v1","to":"a","w":1},{"from":"a","to":"a","w":2},
                     {"from":"a","to":"v2","w":1}]})");
    put("k2.json",
        R"({"vertices":["1","2"],
            "edges":[{"from":"1","to":"1","w":1},{"from":"1","to":"2","w":1},
                     {"from":"2","to":"1","w":1},{"from":"2","to":"2","w":1}]})");
    put("dag.json",
        R"({"vertices":["a","b","c","z"],
            "edges":[{"from":"a","to":"b","w":1},{"from":"b","to":"z","w":1},
                     {"from":"a","to":"c","w":2},{"from":"c","to":"z","w":2}]})");
    put("twocycles.json",
        R"({"vertices":["v1","a","b","v2"],
            "edges":[{"from":"v1","to":"a","w":1},{"from":"a","to":"a","w":2},
                     {"from":"a","to":"b","w":1},{"from":"b","to":"b","w":3},
                     {"from":"b","to":"v2","w":1}]})");
    put("stochastic.csv", "0.5,0.5\n0.5,0.5\n");
    put("oversum.csv", "1.0,0.5\n0.5,0.5\n");
    return d;
  }();
  return dir;
}

std::string fixture(const char* name) {
  return (fixture_dir() / name).string();
}

}  // namespace

TEST_CASE("analyze reports the three classes") {
  auto finite = run_cli("analyze " + fixture("chain.json") + " a c");
  CHECK(finite.code == 0);
  auto fj = json::parse(finite.out);
  CHECK(fj["case"] == "finite");
  CHECK(fj["count"] == 1);

  auto poly = run_cli("analyze " + fixture("loop.json") + " v1 v2");
  CHECK(poly.code == 0);
  auto pj = json::parse(poly.out);
  CHECK(pj["case"] == "polynomial");
  CHECK(pj["c"] == 1);
  CHECK(pj["s"] == 2.0);

  auto log = run_cli("analyze " + fixture("k2.json") + " 1 2");
  CHECK(log.code == 0);
  auto lj = json::parse(log.out);
  CHECK(lj["case"] == "logarithmic");
  CHECK(lj["s"].get<double>() ==
        doctest::Approx(1.4426950408889634).epsilon(1e-6));
  CHECK(lj["loglog_slope"].get<double>() == -lj["s"].get<double>());
}

TEST_CASE("analyze --explain adds the variants") {
  auto r = run_cli("analyze " + fixture("loop.json") + " v1 v2 --explain");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.contains("variants"));
  CHECK(j["variants"].size() == 2);
}

TEST_CASE("error exit codes") {
  // No path.
  CHECK(run_cli("analyze " + fixture("chain.json") + " c a").code == 2);
  // Unknown vertex, unreadable file, bad usage.
  CHECK(run_cli("analyze " + fixture("chain.json") + " a nosuch").code == 1);
  CHECK(run_cli("analyze /nonexistent.json a b").code == 1);
  CHECK(run_cli("analyze").code == 1);
  CHECK(run_cli("nosuchcommand").code == 1);
  // Guard exceeded.
  CHECK(run_cli("enumerate " + fixture("k2.json") +
                " 1 2 --max-rank 1000000 --guard-frontier 50")
            .code == 3);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("enumerate emits the documented CSV") {
  auto r = run_cli("enumerate " + fixture("loop.json") +
                   " v1 v2 --max-rank 3");
  CHECK(r.code == 0);
  CHECK(r.out == "rank,weight\n1,2\n2,4\n3,6\n");

  auto with_paths = run_cli("enumerate " + fixture("loop.json") +
                            " v1 v2 --max-rank 2 --paths");
  CHECK(with_paths.out == "rank,weight,path\n1,2,0/2\n2,4,0/1/2\n");

  auto capped = run_cli("enumerate " + fixture("chain.json") +
                        " a c --max-weight 3.0");
  CHECK(capped.out == "rank,weight\n1,3\n");

  CHECK(run_cli("enumerate " + fixture("chain.json") + " a c").code == 1);
}

TEST_CASE("verify passes honest cases and fails rigged ones") {
  auto finite = run_cli("verify " + fixture("dag.json") + " a z");
  CHECK(finite.code == 0);
  auto fj = json::parse(finite.out);
  CHECK(fj["pass"] == true);
  CHECK(fj["enumerated_count"] == 2);

  auto log = run_cli("verify " + fixture("k2.json") + " 1 2 --max-rank 20000");
  CHECK(log.code == 0);
  CHECK(json::parse(log.out)["pass"] == true);

  auto poly = run_cli("verify " + fixture("twocycles.json") +
                      " v1 v2 --max-rank 20000");
  CHECK(poly.code == 0);
  CHECK(json::parse(poly.out)["pass"] == true);

  // An absurd tolerance turns the finite-rank fit bias into a failure.
  auto rigged = run_cli("verify " + fixture("k2.json") +
                        " 1 2 --max-rank 2000 --tolerance 1e-9");
  CHECK(rigged.code == 4);
  CHECK(json::parse(rigged.out)["pass"] == false);

  CHECK(run_cli("verify " + fixture("k2.json") + " 1 2 --max-rank 50").code ==
        1);
}

TEST_CASE("markov conversion round-trips through analyze") {
  auto out = (fixture_dir() / "converted.json").string();
  auto conv = run_cli("convert-markov " + fixture("stochastic.csv") +
                      " --out " + out);
  CHECK(conv.code == 0);
  auto j = json::parse(std::ifstream(out));
  CHECK(j["matrix"] == "stochastic");
  CHECK(j["edges"].size() == 4);

  auto an = run_cli("analyze " + out + " 0 1");
  CHECK(an.code == 0);
  auto aj = json::parse(an.out);
  CHECK(aj["case"] == "logarithmic");
  CHECK(aj["s"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(run_cli("convert-markov " + fixture("oversum.csv")).code == 1);
}

TEST_CASE("approx-sweep reports rates next to the solver") {
  auto r = run_cli("approx-sweep " + fixture("k2.json") + " --bases 1.0");
  CHECK(r.code == 0);
  REQUIRE(r.out.rfind("base,rate,solver_rate\n", 0) == 0);
  double base, rate, solver;
  REQUIRE(std::sscanf(r.out.c_str() + r.out.find('\n') + 1, "%lf,%lf,%lf",
                      &base, &rate, &solver) == 3);
  CHECK(base == 1.0);
  CHECK(rate == doctest::Approx(solver).epsilon(1e-9));

  // Inadmissible base.
  CHECK(run_cli("approx-sweep " + fixture("k2.json") + " --bases 2.0").code ==
        1);
  // No non-cycle component anywhere.
  CHECK(run_cli("approx-sweep " + fixture("loop.json") + " --bases 0.5")
            .code == 1);
}

TEST_CASE("the hidden generator is deterministic") {
  auto a = run_cli("gen --seed 7 --vertices 5 --edges 8 --kind scc");
  auto b = run_cli("gen --seed 7 --vertices 5 --edges 8 --kind scc");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_NOTHROW(pathrank::parse_graph(a.out));
}
