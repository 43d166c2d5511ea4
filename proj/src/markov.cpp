#include "pathrank/markov.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pathrank {

namespace {
constexpr double kRowSumTolerance = 1e-9;
}

MarkovChain::MarkovChain(std::vector<std::string> states,
                         std::vector<double> probs)
    : states_(std::move(states)), probs_(std::move(probs)) {
  const std::size_t n = states_.size();
  if (n == 0) throw InvalidInput("a Markov chain needs at least one state");
  if (probs_.size() != n * n)
    throw InvalidInput("probability matrix must be " + std::to_string(n) +
                       "x" + std::to_string(n) + ", got " +
                       std::to_string(probs_.size()) + " entries");
  sub_rows_.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double p = probs_[i * n + j];
      if (!(p >= 0.0) || p > 1.0)
        throw InvalidInput("state \"" + states_[i] + "\": probability to \"" +
                           states_[j] + "\" out of range: " +
                           std::to_string(p));
      sum += p;
    }
    if (sum > 1.0 + kRowSumTolerance)
      throw InvalidInput("state \"" + states_[i] + "\": row sums to " +
                         std::to_string(sum) + ", expected at most 1");
    sub_rows_[i] = sum < 1.0 - kRowSumTolerance;
    any_sub_ = any_sub_ || sub_rows_[i];
  }
}

namespace {

bool numeric_token(const std::string& tok) {
  if (tok.empty()) return false;
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end != nullptr && *end == '\0';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

MarkovChain parse_markov_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw ParseError("Markov CSV is empty");

  std::vector<std::string> states;
  std::size_t first_data = 0;
  bool header = false;
  for (const std::string& tok : rows[0])
    if (!numeric_token(tok)) header = true;
  if (header) {
    states = rows[0];
    first_data = 1;
  }
  const std::size_t n = rows.size() - first_data;
  if (n == 0) throw ParseError("Markov CSV has a header but no rows");
  if (header && states.size() != n)
    throw ParseError("Markov CSV: " + std::to_string(states.size()) +
                     " state names but " + std::to_string(n) + " rows");
  if (!header)
    for (std::size_t i = 0; i < n; ++i) states.push_back(std::to_string(i));

  std::vector<double> probs(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[first_data + i];
    if (row.size() != n)
      throw ParseError("Markov CSV row " + std::to_string(first_data + i + 1) +
                       " has " + std::to_string(row.size()) +
                       " fields, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (!numeric_token(row[j]))
        throw ParseError("Markov CSV row " + std::to_string(first_data + i + 1) +
                         ": \"" + row[j] + "\" is not a number");
      probs[i * n + j] = std::strtod(row[j].c_str(), nullptr);
    }
  }

  // Syntax errors above are ParseError; value errors (range, row
  // sums) keep the InvalidInput type thrown by the constructor.
  return MarkovChain(std::move(states), std::move(probs));
}

MarkovChain parse_markov_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Markov CSV file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_markov_csv(buf.str());
}

WeightedDigraph from_markov(const MarkovChain& chain) {
  const int n = chain.state_count();
  struct ProbEdge {
    int from;
    int to;
    double p;
  };
  std::vector<ProbEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (chain.prob(i, j) > 0.0) edges.push_back({i, j, chain.prob(i, j)});

  std::vector<bool> alive(n, true);
  for (;;) {
    // Lexicographically smallest (row, column) probability-1 edge.
    // Edge order only ever rewrites endpoints in place, so scanning is
    // deterministic.
    int pick = -1;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].p != 1.0) continue;
      if (pick < 0 || edges[k].from < edges[pick].from ||
          (edges[k].from == edges[pick].from &&
           edges[k].to < edges[pick].to))
        pick = static_cast<int>(k);
    }
    if (pick < 0) break;
    const int src = edges[pick].from;
    const int dst = edges[pick].to;
    if (src == dst)
      throw InvalidInput(
          "chain contains a cycle of probability-1 transitions through "
          "state \"" +
          chain.states()[src] + "\"; its paths do not have isolated weights");
    // Merge src into dst: src's incoming edges are redirected to dst,
    // any residual outgoing edges are re-sourced at dst, and the
    // weight-0 transition itself disappears.
    std::vector<ProbEdge> kept;
    kept.reserve(edges.size() - 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (k == static_cast<std::size_t>(pick)) continue;
      ProbEdge e = edges[k];
      if (e.to == src) e.to = dst;
      if (e.from == src) e.from = dst;
      kept.push_back(e);
    }
    edges = std::move(kept);
    alive[src] = false;
  }

  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i)
    if (alive[i]) vertices.push_back(chain.states()[i]);
  std::vector<EdgeSpec> specs;
  specs.reserve(edges.size());
  for (const auto& e : edges) {
    specs.push_back(EdgeSpec{chain.states()[e.from], chain.states()[e.to],
                             -std::log(e.p)});
  }
  return WeightedDigraph(std::move(vertices), specs);
}

}  // namespace pathrank
