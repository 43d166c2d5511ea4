#include "pathrank/approximate.hpp"

#include <cmath>
#include <string>

#include "pathrank/structure.hpp"

namespace pathrank {

WeightedDigraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<VertexId>& keep) {
  std::vector<bool> mask(g.vertex_count(), false);
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (VertexId v : keep) {
    if (v < 0 || v >= g.vertex_count())
      throw InvalidInput("induced subgraph vertex out of range");
    if (!mask[v]) {
      mask[v] = true;
      names.push_back(g.name(v));
    }
  }
  std::vector<EdgeSpec> edges;
  for (const Edge& e : g.edges())
    if (mask[e.from] && mask[e.to])
      edges.push_back(EdgeSpec{g.name(e.from), g.name(e.to), e.weight});
  return WeightedDigraph(std::move(names), edges);
}

ApproximateGraph build_approximate(const WeightedDigraph& g, double b,
                                   const ApproximateOptions& opts) {
  if (!(b > 0.0)) throw InvalidInput("approximation base must be positive");

  ApproximateGraph out;
  out.base = b;
  out.chain_length.reserve(g.edge_count());
  std::size_t total_vertices = g.vertex_count();
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    int links = static_cast<int>(std::floor(e.weight / b));
    if (links < 1)
      throw InvalidInput("approximation base " + std::to_string(b) +
                         " exceeds the weight of edge " + std::to_string(id) +
                         " (" + std::to_string(e.weight) + ")");
    out.chain_length.push_back(links);
    out.max_rounding =
        std::max(out.max_rounding, std::abs(e.weight - links * b));
    total_vertices += static_cast<std::size_t>(links - 1);
  }
  if (total_vertices > opts.size_guard)
    throw GuardExceeded("expanded graph would have " +
                        std::to_string(total_vertices) +
                        " vertices, over the budget of " +
                        std::to_string(opts.size_guard));

  std::vector<std::string> names = g.names();
  names.reserve(total_vertices);
  std::vector<EdgeSpec> edges;
  edges.reserve(total_vertices);
  auto link_name = [&](EdgeId id, int k) {
    std::string name = "_e" + std::to_string(id) + "." + std::to_string(k);
    while (g.has_vertex(name)) name += "'";
    return name;
  };
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    const int links = out.chain_length[id];
    std::string at = g.name(e.from);
    for (int k = 1; k < links; ++k) {
      std::string next = link_name(id, k);
      names.push_back(next);
      edges.push_back(EdgeSpec{at, next, b});
      at = std::move(next);
    }
    edges.push_back(EdgeSpec{at, g.name(e.to), b});
  }
  out.expanded = WeightedDigraph(std::move(names), edges);
  return out;
}

std::vector<SweepPoint> approx_rate_sweep(
    const WeightedDigraph& g, const std::vector<VertexId>& component,
    std::span<const double> bases, const ApproximateOptions& opts) {
  WeightedDigraph sub = induced_subgraph(g, component);
  SccDecomposition scc = scc_decompose(sub);
  if (scc.components.size() != 1 || !scc.components[0].nontrivial)
    throw InvalidInput("sweep needs a strongly connected component");
  if (scc.components[0].is_cycle)
    throw InvalidInput(
        "sweep component is a plain cycle; its uniform rate is undefined");

  std::vector<SweepPoint> points;
  points.reserve(bases.size());
  for (double b : bases) {
    ApproximateGraph ap = build_approximate(sub, b, opts);
    SparseAdjacency adj;
    adj.targets.resize(ap.expanded.vertex_count());
    for (const Edge& e : ap.expanded.edges()) adj.targets[e.from].push_back(e.to);
    double lambda = spectral_radius(adj);
    if (!(lambda > 1.0))
      throw ConvergenceError("expanded adjacency radius " +
                             std::to_string(lambda) +
                             " is not above 1; cannot form a rate");
    SweepPoint p;
    p.base = b;
    p.expanded_vertices = ap.expanded.vertex_count();
    p.lambda = lambda;
    p.rate = b / std::log(lambda);
    points.push_back(p);
  }
  return points;
}

}  // namespace pathrank
