#pragma once

#include <span>
#include <vector>

#include "pathrank/asymptotics.hpp"
#include "pathrank/graph.hpp"
#include "pathrank/spectral.hpp"

namespace pathrank {

// Restriction of a graph to a vertex subset: the vertices keep their
// names, edges survive when both endpoints do.  Edge ids are
// renumbered in the original order.
WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<VertexId>& keep);

// Uniform-weight approximation: every edge of weight w becomes a chain
// of floor(w / b) edges of weight b through fresh interior vertices.
// A path of the original maps to one of the expansion whose weight
// differs by at most (max rounding error / min edge weight) relatively.
struct ApproximateGraph {
  double base = 0.0;                // b
  WeightedDigraph expanded;         // all edge weights equal base
  std::vector<int> chain_length;    // per original edge id
  double max_rounding = 0.0;        // max |w - floor(w/b)*b| over edges
};

struct ApproximateOptions {
  // Expanded vertex-count budget.
  std::size_t size_guard = 20'000;
};

// Requires 0 < b <= every edge weight so each chain has at least one
// link.  Throws GuardExceeded when the expansion would outgrow the
// budget.
ApproximateGraph build_approximate(const WeightedDigraph& g, double b,
                                   const ApproximateOptions& opts = {});

struct SweepPoint {
  double base = 0.0;
  int expanded_vertices = 0;
  double lambda = 0.0;  // adjacency spectral radius of the expansion
  double rate = 0.0;    // s_b = base / log(lambda)
};

// For one strongly connected non-cycle component, the uniform-case
// rate of its approximation at each base: s_b = b / log rho(A(b)).
// s_b converges to the component's solve_log_rate value as b shrinks.
std::vector<SweepPoint> approx_rate_sweep(const WeightedDigraph& g,
                                          const std::vector<VertexId>& component,
                                          std::span<const double> bases,
                                          const ApproximateOptions& opts = {});

}  // namespace pathrank
