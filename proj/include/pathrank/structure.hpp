#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathrank/graph.hpp"

namespace pathrank {

// Strongly connected component structure of a graph.  "Component"
// rows cover every vertex: vertices on at least one cycle are grouped
// into their strongly connected component (nontrivial = true), each
// remaining vertex forms a trivial singleton row of its own.  A
// singleton is nontrivial exactly when it carries a self-loop.
// Components are listed in reverse topological order: every edge of
// the condensation goes from a higher component index to a lower one.
struct SccDecomposition {
  struct Component {
    std::vector<VertexId> vertices;  // ascending
    bool nontrivial = false;
    // Every vertex of the induced subgraph has in- and out-degree 1.
    bool is_cycle = false;
    // gcd of the lengths of all closed walks inside the component;
    // 0 for trivial singletons.
    int period = 0;
  };

  std::vector<Component> components;
  std::vector<int> component_of;  // vertex -> index into components
  // Deduplicated component-level edges (from, to), sorted; from > to
  // always holds because of the reverse topological numbering.
  std::vector<std::pair<int, int>> condensation_edges;

  bool same_nontrivial_component(VertexId u, VertexId v) const {
    int c = component_of[u];
    return c == component_of[v] && components[c].nontrivial;
  }
};

SccDecomposition scc_decompose(const WeightedDigraph& g);

// gcd of closed-walk lengths inside one strongly connected component,
// computed from BFS level differences.  The vertex list must induce a
// strongly connected subgraph with at least one edge.
int period(const WeightedDigraph& g, const std::vector<VertexId>& component);

// Vertices lying on at least one path from v1 to v2 ("vt(X)").  For
// v1 == v2 the paths in question are the closed ones through v1, so
// the result is exactly the cycle vertices around it and is empty when
// v1 lies on no cycle.  Empty result == no path at all.  Sorted.
std::vector<VertexId> relevant_vertices(const WeightedDigraph& g, VertexId v1,
                                        VertexId v2);

// Itinerary of a path: its visited-vertex sequence collapsed by the
// rule "drop s_i whenever s_{i-1} <-> s_i <-> s_{i+1}", applied left
// to right until a fixed point.  u <-> v means u and v share a
// nontrivial strongly connected component.  The result starts at the
// path's source, ends at its target, and mentions each vertex at most
// twice.
std::vector<VertexId> itinerary(const WeightedDigraph& g,
                                const SccDecomposition& scc, const Path& x);

// One admissible itinerary shape between two query vertices, together
// with the concrete bridging edges.  A transition either dwells inside
// a nontrivial component (the path runs from entry to exit using only
// that component's edges, at least one of them) or crosses between
// components along one concrete edge.  Distinct bridging-edge choices
// are distinct variants.
struct ItineraryVariant {
  struct Transition {
    enum class Kind { Dwell, Edge };
    Kind kind = Kind::Edge;
    // Dwell
    int component = -1;
    VertexId entry = -1;
    VertexId exit = -1;
    // Edge
    EdgeId edge = -1;
  };

  std::vector<VertexId> itinerary;  // transitions.size() + 1 vertices
  std::vector<Transition> transitions;

  int dwell_count() const;
  std::vector<int> j1() const;  // dwell positions
  std::vector<int> j2() const;  // edge positions

  bool operator==(const ItineraryVariant& other) const;
};

struct VariantOptions {
  std::size_t guard = 1'000'000;  // max number of variants produced
};

// All variants for paths from v1 to v2, i.e. every route through the
// condensation restricted to relevant vertices, every dwell-or-pass
// choice with every (entry, exit) pair, and every concrete bridging
// edge.  Deterministic order: depth-first, pass before dwell, dwell
// exits by ascending vertex id, bridging edges by ascending edge id.
// Empty when no path exists.  Throws GuardExceeded past opts.guard.
std::vector<ItineraryVariant> enumerate_variants(
    const WeightedDigraph& g, const SccDecomposition& scc, VertexId v1,
    VertexId v2, const VariantOptions& opts = {});

// A concrete path split into the factors named by its variant: dwell
// transitions carry the consecutive run of edges spent inside the
// component, edge transitions carry their single edge.  Concatenating
// the factors in order reproduces the path.
struct PathFactors {
  ItineraryVariant variant;
  // Edge ids per transition, parallel to variant.transitions.
  std::vector<std::vector<EdgeId>> segments;
};

PathFactors factor_path(const WeightedDigraph& g, const SccDecomposition& scc,
                        const Path& x);

// Number of distinct paths from v1 to v2 when no nontrivial component
// touches the relevant vertices (so the induced subgraph is a DAG);
// saturates at UINT64_MAX.  Throws InvalidInput if a nontrivial
// component is present.
std::uint64_t count_dag_paths(const WeightedDigraph& g,
                              const SccDecomposition& scc, VertexId v1,
                              VertexId v2);

// Maximum number of cycle components a single condensation route from
// v1 to v2 can meet, by longest-path DP over the condensation
// restricted to relevant vertices (cycle components weigh 1, all else
// 0).  Returns 0 when no path exists.
int max_dwell_count(const WeightedDigraph& g, const SccDecomposition& scc,
                    VertexId v1, VertexId v2);

}  // namespace pathrank
