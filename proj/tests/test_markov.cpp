#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "pathrank/errors.hpp"
#include "pathrank/markov.hpp"

using namespace pathrank;
using namespace testutil;

TEST_CASE("csv parsing") {
  SUBCASE("bare matrix, states named by index") {
    auto c = parse_markov_csv("0.5,0.5\n0.5,0.5\n");
    CHECK(c.state_count() == 2);
    CHECK(c.states() == std::vector<std::string>{"0", "1"});
    CHECK(c.prob(0, 1) == 0.5);
    CHECK(!c.sub_stochastic());
  }
  SUBCASE("header row names the states") {
    auto c = parse_markov_csv("idle,busy\n0.9,0.1\n0.4,0.6\n");
    CHECK(c.states() == std::vector<std::string>{"idle", "busy"});
    CHECK(c.prob(1, 0) == 0.4);
  }
  SUBCASE("shape and range errors") {
    CHECK_THROWS_AS(parse_markov_csv("0.5,0.5\n1.0\n"), ParseError);
    CHECK_THROWS_AS(parse_markov_csv(""), ParseError);
    // row sum 1.5
    CHECK_THROWS_AS(parse_markov_csv("1.0,0.5\n0.5,0.5\n"), InvalidInput);
    // entry out of range
    CHECK_THROWS_AS(parse_markov_csv("1.2,0\n0,1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_markov_csv("-0.1,1\n0,1\n"), InvalidInput);
  }
  SUBCASE("sub-stochastic rows are flagged") {
    auto c = parse_markov_csv("0.4,0.4\n0.5,0.5\n");
    CHECK(c.sub_stochastic());
    CHECK(c.row_sub_stochastic(0));
    CHECK(!c.row_sub_stochastic(1));
  }
}

TEST_CASE("uniform coin flip converts to the log-2 clique") {
  auto g = from_markov(parse_markov_csv("0.5,0.5\n0.5,0.5\n"));
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 4);
  for (const auto& e : g.edges()) CHECK(e.weight == std::log(2.0));
}

// Merging the probability-1 transition 0 -> 1 leaves a single state
// whose two self-loops are the old 1 -> 1 step and the composite
// 1 -> 0 -> 1 step.  Expected weights derived by hand from the rule.
TEST_CASE("probability-1 transitions collapse into their target") {
  auto g = from_markov(parse_markov_csv("0,1\n0.3,0.7\n"));
  REQUIRE(g.vertex_count() == 1);
  CHECK(g.name(0) == "1");
  REQUIRE(g.edge_count() == 2);
  std::vector<double> w{g.edge(0).weight, g.edge(1).weight};
  std::sort(w.begin(), w.end());
  CHECK(w[0] == doctest::Approx(-std::log(0.7)).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(-std::log(0.3)).epsilon(1e-15));

  // Brute-force identity: walks 1 -> 1 of the original chain taking at
  // most 4 transitions carry exactly the merged graph's path weights.
  // The lighter loop stands for one original transition, the heavier
  // for two.
  std::vector<double> chain_weights;
  const double p[2][2] = {{0.0, 1.0}, {0.3, 0.7}};
  auto walk = [&](auto&& self, int state, int len, double prob) -> void {
    if (state == 1 && len > 0) chain_weights.push_back(-std::log(prob));
    if (len == 4) return;
    for (int next = 0; next < 2; ++next)
      if (p[state][next] > 0.0)
        self(self, next, len + 1, prob * p[state][next]);
  };
  walk(walk, 1, 0, 1.0);

  EdgeId light = g.edge(0).weight < g.edge(1).weight ? 0 : 1;
  std::vector<double> graph_weights;
  auto loops = [&](auto&& self, int len, double acc) -> void {
    if (len > 0) graph_weights.push_back(acc);
    for (EdgeId e = 0; e < 2; ++e) {
      int step = e == light ? 1 : 2;
      if (len + step <= 4) self(self, len + step, acc + g.edge(e).weight);
    }
  };
  loops(loops, 0, 0.0);

  std::sort(chain_weights.begin(), chain_weights.end());
  std::sort(graph_weights.begin(), graph_weights.end());
  REQUIRE(chain_weights.size() == graph_weights.size());
  for (std::size_t i = 0; i < chain_weights.size(); ++i)
    CHECK(approx_rel(chain_weights[i], graph_weights[i], 1e-12));
}

TEST_CASE("probability-1 cycles are rejected") {
  CHECK_THROWS_AS(from_markov(parse_markov_csv("1,0\n0,1\n")), InvalidInput);
  CHECK_THROWS_AS(from_markov(parse_markov_csv("0,1\n1,0\n")), InvalidInput);
}

// Path weights of a converted chain are the negative logs of the walk
// probabilities.
TEST_CASE("path weights match walk probabilities") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3;
    auto m = random_stochastic(rng, n);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    auto g = from_markov(MarkovChain(names, m));
    REQUIRE(g.vertex_count() == n);  // no entries hit probability 1

    std::vector<double> walk_weights;
    auto walk = [&](auto&& self, int state, int len, double prob) -> void {
      if (state == 2 && len > 0) walk_weights.push_back(-std::log(prob));
      if (len == 4) return;
      for (int next = 0; next < n; ++next)
        self(self, next, len + 1, prob * m[state * n + next]);
    };
    walk(walk, 0, 0, 1.0);

    auto paths = brute_paths_by_length(g, g.vertex("0"), g.vertex("2"), 4);
    std::vector<double> path_weights;
    for (const auto& x : paths) path_weights.push_back(path_weight(g, x));

    std::sort(walk_weights.begin(), walk_weights.end());
    std::sort(path_weights.begin(), path_weights.end());
    REQUIRE(walk_weights.size() == path_weights.size());
    for (std::size_t i = 0; i < walk_weights.size(); ++i)
      CHECK(approx_rel(walk_weights[i], path_weights[i], 1e-12));
  }
}
