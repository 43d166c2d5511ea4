#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathrank/graph.hpp"
#include "pathrank/spectral.hpp"
#include "pathrank/structure.hpp"

namespace pathrank {

// How the ranked weight sequence p_1 <= p_2 <= ... of the paths
// between two vertices grows:
//   Finite       -- only `count` paths exist;
//   Polynomial   -- p_r^degree / r -> rate;
//   Logarithmic  -- p_r / log r   -> rate.
struct AsymptoticClass {
  enum class Case { Finite, Polynomial, Logarithmic };

  Case kind = Case::Finite;
  std::uint64_t count = 0;  // Finite
  int degree = 0;           // Polynomial, >= 1
  double rate = 0.0;        // Polynomial / Logarithmic, > 0

  static AsymptoticClass finite(std::uint64_t n) {
    return {Case::Finite, n, 0, 0.0};
  }
  static AsymptoticClass polynomial(int degree, double rate) {
    return {Case::Polynomial, 0, degree, rate};
  }
  static AsymptoticClass logarithmic(double rate) {
    return {Case::Logarithmic, 0, 0, rate};
  }

  bool operator==(const AsymptoticClass&) const = default;
};

std::string to_string(const AsymptoticClass& c);

// One strongly connected component viewed as a matrix: vertex set,
// local indexing and the edges among them.  Entry convention is
// column-to-row: position (i, j) describes edges from vertex j to
// vertex i, so matrix powers accumulate walk counts.
class ComponentMatrix {
 public:
  ComponentMatrix(const WeightedDigraph& g, std::vector<VertexId> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  // (i, j) = number of edges from vertices()[j] to vertices()[i];
  // parallel edges count with multiplicity (equivalent, for walk
  // counting, to splitting them apart).
  SquareMatrix adjacency() const;

  // (i, j) = sum over those edges of exp(-weight / s).
  SquareMatrix decay(double s) const;

  double min_edge_weight() const { return min_weight_; }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }
  const std::vector<EdgeId>& edge_ids() const { return edge_ids_; }

 private:
  const WeightedDigraph& g_;
  std::vector<VertexId> vertices_;
  std::vector<int> local_;  // graph vertex -> local index or -1
  std::vector<EdgeId> edge_ids_;
  double min_weight_ = 0.0;
};

// Total weight around a cycle component (every vertex in/out degree 1
// inside it), summed in ascending edge-id order.  Starting-vertex
// independent.  Throws InvalidInput if the vertices do not induce a
// cycle.
double cycle_rate(const WeightedDigraph& g, const std::vector<VertexId>& cycle);

struct LogRateOptions {
  // Bisection stops when the bracket's relative width drops below
  // this.
  double relative_width = 1e-12;
  PowerIterationOptions power = {};
  // When set, every bisection bracket is appended: (lo, hi) with
  // rho(decay(lo)) < 1 < rho(decay(hi)).
  std::vector<std::pair<double, double>>* trace = nullptr;
};

// The unique s > 0 at which the component's decay matrix has spectral
// radius exactly 1.  rho(decay(s)) grows strictly in s, vanishes as
// s -> 0 and tends to the adjacency radius (> 1 off cycles) as
// s -> infinity, so a doubling/halving bracket from the smallest edge
// weight followed by bisection always lands on it.  The component
// must be strongly connected and not a cycle.
double solve_log_rate(const WeightedDigraph& g,
                      const std::vector<VertexId>& component,
                      const LogRateOptions& opts = {});

// Weight-sequence algebra.  compose = all ways of adding one weight
// from each list (path concatenation); union_of = multiset union
// (alternative routes).  Both reject an empty argument list.
AsymptoticClass compose(std::span<const AsymptoticClass> parts);
AsymptoticClass union_of(std::span<const AsymptoticClass> parts);

struct ClassifyOptions {
  VariantOptions variants = {};
  LogRateOptions log_rate = {};
};

struct PolynomialRate {
  int degree = 0;
  double rate = 0.0;
};

// Degree and rate when every relevant nontrivial component is a
// cycle: degree c = most dwells any variant makes, and each variant
// with c dwells contributes c! * (product of its cycle weights) to a
// harmonic sum, union-style.  Throws InvalidInput when no variant
// dwells (the sequence would be finite) or some dwelled component is
// not a cycle.
PolynomialRate polynomial_rate(const WeightedDigraph& g,
                               const SccDecomposition& scc,
                               std::span<const ItineraryVariant> variants);

// Per-component numbers backing a classification: the dwell law of
// every nontrivial component touching the relevant vertices.
struct ComponentAssessment {
  int component = -1;  // index into the decomposition
  bool is_cycle = false;
  int period = 0;
  double cycle_weight = 0.0;  // cycles: total weight around
  double log_rate = 0.0;      // non-cycles: solve_log_rate value
};

struct ClassificationDetail {
  std::vector<VertexId> relevant;
  SccDecomposition scc;
  std::vector<ComponentAssessment> components;
  // Finite case: equals count (each variant is one concrete path);
  // polynomial case: enumerated; logarithmic case: not computed.
  std::optional<std::uint64_t> variant_count;
  AsymptoticClass result;
};

// Full classification of the ranked weight sequence between v1 and
// v2.  Throws NoPathError when no path exists and GuardExceeded if
// variant enumeration outgrows its budget (finite/polynomial cases
// only; the logarithmic rate never needs variants).
ClassificationDetail classify_detail(const WeightedDigraph& g, VertexId v1,
                                     VertexId v2,
                                     const ClassifyOptions& opts = {});
AsymptoticClass classify(const WeightedDigraph& g, VertexId v1, VertexId v2,
                         const ClassifyOptions& opts = {});
AsymptoticClass classify(const WeightedDigraph& g, const std::string& v1,
                         const std::string& v2,
                         const ClassifyOptions& opts = {});

}  // namespace pathrank
