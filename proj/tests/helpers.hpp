#pragma once

// Shared fixtures and independent oracles for the test suite.  The
// enumerators here are deliberately naive (recursive DFS, dense DP) so
// they cannot share bugs with the library's frontier-based engines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pathrank/graph.hpp"

namespace testutil {

using pathrank::EdgeId;
using pathrank::EdgeSpec;
using pathrank::Path;
using pathrank::VertexId;
using pathrank::WeightedDigraph;

inline bool approx_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// All paths v1 -> v2 of weight <= limit, by DFS over edges in id
// order.  Positive weights bound the recursion depth.
inline std::vector<Path> brute_paths_by_weight(const WeightedDigraph& g,
                                               VertexId v1, VertexId v2,
                                               double limit) {
  std::vector<Path> out;
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, VertexId at, double used) -> void {
    if (at == v2 && !stack.empty()) out.push_back(Path{stack});
    for (EdgeId e : g.out_edges(at)) {
      double w = g.edge(e).weight;
      if (used + w > limit) continue;
      stack.push_back(e);
      self(self, g.edge(e).to, used + w);
      stack.pop_back();
    }
  };
  dfs(dfs, v1, 0.0);
  return out;
}

// All paths v1 -> v2 of at most max_edges edges.
inline std::vector<Path> brute_paths_by_length(const WeightedDigraph& g,
                                               VertexId v1, VertexId v2,
                                               int max_edges) {
  std::vector<Path> out;
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, VertexId at, int used) -> void {
    if (at == v2 && !stack.empty()) out.push_back(Path{stack});
    if (used == max_edges) return;
    for (EdgeId e : g.out_edges(at)) {
      stack.push_back(e);
      self(self, g.edge(e).to, used + 1);
      stack.pop_back();
    }
  };
  dfs(dfs, v1, 0);
  return out;
}

// Number of paths v1 -> v2 of total weight <= limit on an
// integer-weight graph, by DP over (accumulated weight, vertex).
inline std::uint64_t dp_count_by_weight(const WeightedDigraph& g, VertexId v1,
                                        VertexId v2, int limit) {
  const int n = g.vertex_count();
  // ways[w][v] = paths of weight exactly w from v1 to v.
  std::vector<std::vector<std::uint64_t>> ways(
      limit + 1, std::vector<std::uint64_t>(n, 0));
  ways[0][v1] = 1;
  std::uint64_t total = 0;
  for (int w = 0; w <= limit; ++w) {
    if (w > 0) total += ways[w][v2];
    for (VertexId v = 0; v < n; ++v) {
      if (ways[w][v] == 0) continue;
      for (EdgeId e : g.out_edges(v)) {
        int ew = static_cast<int>(g.edge(e).weight);
        if (w + ew <= limit) ways[w + ew][g.edge(e).to] += ways[w][v];
      }
    }
  }
  return total;
}

inline std::vector<std::string> vnames(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

// Random DAG: edges only from lower to higher index.
inline WeightedDigraph random_dag(std::mt19937_64& rng, int n, int edges,
                                  double wlo = 0.5, double whi = 2.0) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(wlo, whi);
  auto names = vnames(n);
  std::vector<EdgeSpec> es;
  for (int k = 0; k < edges; ++k) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    es.push_back({names[u], names[v], weight(rng)});
  }
  return WeightedDigraph(names, es);
}

// Random strongly connected graph: a Hamiltonian cycle plus extras.
inline WeightedDigraph random_scc(std::mt19937_64& rng, int n, int extra,
                                  double wlo = 0.5, double whi = 2.0) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(wlo, whi);
  auto names = vnames(n);
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    es.push_back({names[i], names[(i + 1) % n], weight(rng)});
  for (int k = 0; k < extra; ++k)
    es.push_back({names[pick(rng)], names[pick(rng)], weight(rng)});
  return WeightedDigraph(names, es);
}

// Random graph with no structural constraint (self-loops allowed).
inline WeightedDigraph random_graph(std::mt19937_64& rng, int n, int edges,
                                    double wlo = 0.5, double whi = 2.0) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(wlo, whi);
  auto names = vnames(n);
  std::vector<EdgeSpec> es;
  for (int k = 0; k < edges; ++k)
    es.push_back({names[pick(rng)], names[pick(rng)], weight(rng)});
  return WeightedDigraph(names, es);
}

// Random row-stochastic matrix with strictly positive entries.
inline std::vector<double> random_stochastic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> raw(0.05, 1.0);
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += (m[i * n + j] = raw(rng));
    for (int j = 0; j < n; ++j) m[i * n + j] /= sum;
  }
  return m;
}

}  // namespace testutil
