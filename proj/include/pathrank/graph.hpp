#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathrank/errors.hpp"

namespace pathrank {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  VertexId from = -1;
  VertexId to = -1;
  double weight = 0.0;  // strictly positive
};

// Edge given by endpoint names, used while assembling a graph.
struct EdgeSpec {
  std::string from;
  std::string to;
  double weight = 0.0;
};

// Finite directed multigraph with strictly positive edge weights.
// Parallel edges and self-loops are first-class.  Edge ids are the
// positions in the edge list and stay stable for the lifetime of the
// object.  Immutable once constructed; all accessors are const and
// safe to call concurrently.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  // Validates: unique vertex names, known endpoints, weight > 0.
  WeightedDigraph(std::vector<std::string> vertices,
                  const std::vector<EdgeSpec>& edges);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Throws InvalidInput for unknown names.
  VertexId vertex(const std::string& name) const;
  bool has_vertex(const std::string& name) const {
    return by_name_.count(name) > 0;
  }

  // Edge ids sorted ascending within each bucket.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> by_name_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Non-empty chained list of edge ids.  A path may repeat vertices and
// edges freely.
struct Path {
  std::vector<EdgeId> edges;

  bool empty() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }
};

// Source vertex of the path's first edge / target of its last edge.
VertexId path_source(const WeightedDigraph& g, const Path& x);
VertexId path_target(const WeightedDigraph& g, const Path& x);

// Vertex sequence visited by the path: length() + 1 entries.
std::vector<VertexId> path_vertices(const WeightedDigraph& g, const Path& x);

// Sum of edge weights accumulated left to right in path order.  The
// summation order is part of the contract: repeated calls on equal
// paths are bit-identical.  Throws InvalidInput on an empty path, an
// out-of-range edge id, or a chaining violation.
double path_weight(const WeightedDigraph& g, const Path& x);

// Parses the JSON document {"vertices": [names...], "edges":
// [{"from", "to", "weight"}...]}.  Edge ids are the array positions.
// Rejects duplicate vertex names, unknown endpoints and weights <= 0,
// naming the offending element.  "w" is accepted as an alias for
// "weight".
WeightedDigraph parse_graph(const std::string& json_text);
WeightedDigraph parse_graph_file(const std::string& path);

// Serializes in the schema accepted by parse_graph.
std::string graph_to_json(const WeightedDigraph& g, int indent = -1);

// Splits every member of each parallel-edge bundle (>= 2 edges sharing
// both endpoints, self-loop bundles included) into two half-weight
// edges through a fresh midpoint vertex.  The result has at most one
// edge per ordered vertex pair and admits a weight-preserving
// bijection with the original paths between original vertices.
// Single edges are left untouched.
WeightedDigraph normalize_simple(const WeightedDigraph& g);

}  // namespace pathrank
