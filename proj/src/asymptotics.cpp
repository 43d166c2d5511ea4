#include "pathrank/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace pathrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

}  // namespace

std::string to_string(const AsymptoticClass& c) {
  std::ostringstream os;
  switch (c.kind) {
    case AsymptoticClass::Case::Finite:
      os << "finite(" << c.count << ")";
      break;
    case AsymptoticClass::Case::Polynomial:
      os << "polynomial(c=" << c.degree << ", s=" << c.rate << ")";
      break;
    case AsymptoticClass::Case::Logarithmic:
      os << "logarithmic(s=" << c.rate << ")";
      break;
  }
  return os.str();
}

ComponentMatrix::ComponentMatrix(const WeightedDigraph& g,
                                 std::vector<VertexId> vertices)
    : g_(g), vertices_(std::move(vertices)) {
  if (vertices_.empty())
    throw InvalidInput("component matrix needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  local_.assign(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 0 || vertices_[i] >= g.vertex_count())
      throw InvalidInput("component vertex out of range");
    local_[vertices_[i]] = static_cast<int>(i);
  }
  min_weight_ = kInf;
  for (VertexId v : vertices_)
    for (EdgeId e : g.out_edges(v))
      if (local_[g.edge(e).to] >= 0) {
        edge_ids_.push_back(e);
        min_weight_ = std::min(min_weight_, g.edge(e).weight);
      }
  std::sort(edge_ids_.begin(), edge_ids_.end());
}

SquareMatrix ComponentMatrix::adjacency() const {
  SquareMatrix m(size());
  for (EdgeId e : edge_ids_) {
    const Edge& edge = g_.edge(e);
    m.at(local_[edge.to], local_[edge.from]) += 1.0;
  }
  return m;
}

SquareMatrix ComponentMatrix::decay(double s) const {
  if (!(s > 0.0)) throw InvalidInput("decay matrix needs s > 0");
  SquareMatrix m(size());
  for (EdgeId e : edge_ids_) {
    const Edge& edge = g_.edge(e);
    m.at(local_[edge.to], local_[edge.from]) += std::exp(-edge.weight / s);
  }
  return m;
}

double cycle_rate(const WeightedDigraph& g,
                  const std::vector<VertexId>& cycle) {
  ComponentMatrix cm(g, cycle);
  if (cm.edge_count() != static_cast<int>(cycle.size()))
    throw InvalidInput("component is not a cycle: " +
                       std::to_string(cm.edge_count()) + " edges over " +
                       std::to_string(cycle.size()) + " vertices");
  // Follow the unique out-edges; one full lap must visit everything.
  std::vector<int> out_degree(cycle.size(), 0);
  std::vector<EdgeId> unique_out(cycle.size(), -1);
  std::vector<int> local(g.vertex_count(), -1);
  const auto& vs = cm.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = (int)i;
  for (EdgeId e : cm.edge_ids()) {
    int from = local[g.edge(e).from];
    ++out_degree[from];
    unique_out[from] = e;
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (out_degree[i] != 1)
      throw InvalidInput("component is not a cycle: vertex \"" +
                         g.name(vs[i]) + "\" has inner out-degree " +
                         std::to_string(out_degree[i]));
  // The walk must close after exactly one full lap; closing earlier
  // means the edges split into several disjoint loops.
  int at = 0;
  for (std::size_t step = 0; step < vs.size(); ++step) {
    at = local[g.edge(unique_out[at]).to];
    if (at < 0)
      throw InvalidInput("component is not a cycle: walk left the vertex set");
    if (at == 0 && step + 1 < vs.size())
      throw InvalidInput(
          "component is not a cycle: it splits into several loops");
  }
  if (at != 0)
    throw InvalidInput(
        "component is not a cycle: it splits into several loops");

  double sum = 0.0;
  for (EdgeId e : cm.edge_ids()) sum += g.edge(e).weight;
  return sum;
}

namespace {

// Strong-connectivity check inside the component's induced subgraph.
void require_strongly_connected(const WeightedDigraph& g,
                                const ComponentMatrix& cm) {
  const auto& vs = cm.vertices();
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = (int)i;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<bool> seen(vs.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      const auto& bucket = dir == 0 ? g.out_edges(vs[i]) : g.in_edges(vs[i]);
      for (EdgeId e : bucket) {
        VertexId other = dir == 0 ? g.edge(e).to : g.edge(e).from;
        int j = local[other];
        if (j >= 0 && !seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (!seen[i])
        throw InvalidInput("component is not strongly connected at vertex \"" +
                           g.name(vs[i]) + "\"");
  }
}

bool induces_cycle(const WeightedDigraph& g, const ComponentMatrix& cm) {
  if (cm.edge_count() != cm.size()) return false;
  std::vector<int> local(g.vertex_count(), -1);
  const auto& vs = cm.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = (int)i;
  std::vector<int> out_deg(vs.size(), 0), in_deg(vs.size(), 0);
  for (EdgeId e : cm.edge_ids()) {
    ++out_deg[local[g.edge(e).from]];
    ++in_deg[local[g.edge(e).to]];
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (out_deg[i] != 1 || in_deg[i] != 1) return false;
  return true;
}

}  // namespace

double solve_log_rate(const WeightedDigraph& g,
                      const std::vector<VertexId>& component,
                      const LogRateOptions& opts) {
  ComponentMatrix cm(g, component);
  if (cm.edge_count() == 0)
    throw InvalidInput("component has no inner edges");
  require_strongly_connected(g, cm);
  if (induces_cycle(g, cm))
    throw InvalidInput(
        "component is a plain cycle; its decay radius stays below 1 for "
        "every s");

  auto rho = [&](double s) { return spectral_radius(cm.decay(s), opts.power); };

  // rho is strictly increasing in s; expand a bracket outward from the
  // smallest edge weight.
  const double s0 = cm.min_edge_weight();
  double lo = s0, hi = s0;
  int expansions = 0;
  while (rho(hi) <= 1.0) {
    hi *= 2.0;
    if (++expansions > 2000)
      throw ConvergenceError("rate bracket failed to expand above 1");
  }
  expansions = 0;
  while (rho(lo) >= 1.0) {
    lo /= 2.0;
    if (++expansions > 2000)
      throw ConvergenceError("rate bracket failed to contract below 1");
  }
  if (opts.trace) opts.trace->push_back({lo, hi});

  while (hi - lo > opts.relative_width * hi) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is one ulp wide
    double r = rho(mid);
    if (r == 1.0) return mid;
    (r < 1.0 ? lo : hi) = mid;
    if (opts.trace) opts.trace->push_back({lo, hi});
  }
  return 0.5 * (lo + hi);
}

AsymptoticClass compose(std::span<const AsymptoticClass> parts) {
  if (parts.empty()) throw InvalidInput("compose of an empty list");

  // An empty factor empties the whole concatenation.
  for (const auto& p : parts)
    if (p.kind == AsymptoticClass::Case::Finite && p.count == 0)
      return AsymptoticClass::finite(0);

  double min_log = kInf;
  bool any_log = false;
  for (const auto& p : parts)
    if (p.kind == AsymptoticClass::Case::Logarithmic) {
      any_log = true;
      min_log = std::min(min_log, p.rate);
    }
  // The sparsest factor dominates a concatenation's growth; finite
  // factors only translate and duplicate, leaving p_r / log r alone.
  if (any_log) return AsymptoticClass::logarithmic(min_log);

  int degree = 0;
  double log_rate = 0.0;
  bool any_poly = false;
  std::uint64_t finite_product = 1;
  for (const auto& p : parts) {
    if (p.kind == AsymptoticClass::Case::Polynomial) {
      any_poly = true;
      degree += p.degree;
      log_rate += std::log(p.rate) - std::lgamma(p.degree + 1.0);
    } else {
      finite_product = saturating_mul(finite_product, p.count);
    }
  }
  if (!any_poly) return AsymptoticClass::finite(finite_product);
  // Interleaving d1 + d2 arithmetic-type factors scales the rate by a
  // multinomial factor; a finite factor of n values makes n translated
  // copies, dividing the rate by n.
  log_rate += std::lgamma(degree + 1.0);
  log_rate -= std::log(static_cast<double>(finite_product));
  return AsymptoticClass::polynomial(degree, std::exp(log_rate));
}

AsymptoticClass union_of(std::span<const AsymptoticClass> parts) {
  if (parts.empty()) throw InvalidInput("union of an empty list");

  double min_log = kInf;
  bool any_log = false;
  for (const auto& p : parts)
    if (p.kind == AsymptoticClass::Case::Logarithmic) {
      any_log = true;
      min_log = std::min(min_log, p.rate);
    }
  if (any_log) return AsymptoticClass::logarithmic(min_log);

  int max_degree = 0;
  for (const auto& p : parts)
    if (p.kind == AsymptoticClass::Case::Polynomial)
      max_degree = std::max(max_degree, p.degree);
  if (max_degree > 0) {
    // Among polynomial members the densest (largest degree) wins;
    // equal-degree members add harmonically.  A lone winner keeps its
    // rate bit for bit.
    double inv_sum = 0.0;
    int members = 0;
    double lone = 0.0;
    for (const auto& p : parts)
      if (p.kind == AsymptoticClass::Case::Polynomial &&
          p.degree == max_degree) {
        inv_sum += 1.0 / p.rate;
        ++members;
        lone = p.rate;
      }
    return AsymptoticClass::polynomial(max_degree,
                                       members == 1 ? lone : 1.0 / inv_sum);
  }

  std::uint64_t total = 0;
  for (const auto& p : parts) total = saturating_add(total, p.count);
  return AsymptoticClass::finite(total);
}

PolynomialRate polynomial_rate(const WeightedDigraph& g,
                               const SccDecomposition& scc,
                               std::span<const ItineraryVariant> variants) {
  int c = 0;
  for (const auto& v : variants) c = std::max(c, v.dwell_count());
  if (c == 0)
    throw InvalidInput(
        "no variant dwells in a component; the path set is finite");

  // Cache each dwelled component's lap weight.
  std::vector<double> lap(scc.components.size(),
                          std::numeric_limits<double>::quiet_NaN());
  auto lap_weight = [&](int comp) {
    if (std::isnan(lap[comp])) {
      if (!scc.components[comp].is_cycle)
        throw InvalidInput(
            "dwelled component is not a cycle; the growth is logarithmic, "
            "not polynomial");
      lap[comp] = cycle_rate(g, scc.components[comp].vertices);
    }
    return lap[comp];
  };

  // Each maximal-dwell variant contributes one union member whose
  // degree-c rate is c! times the product of its lap weights.
  double neg_log_sum = -kInf;
  const double log_c_factorial = std::lgamma(c + 1.0);
  for (const auto& v : variants) {
    if (v.dwell_count() != c) continue;
    double log_rate = log_c_factorial;
    for (const auto& t : v.transitions)
      if (t.kind == ItineraryVariant::Transition::Kind::Dwell)
        log_rate += std::log(lap_weight(t.component));
    neg_log_sum = log_add_exp(neg_log_sum, -log_rate);
  }
  return PolynomialRate{c, std::exp(-neg_log_sum)};
}

ClassificationDetail classify_detail(const WeightedDigraph& g, VertexId v1,
                                     VertexId v2,
                                     const ClassifyOptions& opts) {
  ClassificationDetail detail;
  detail.relevant = relevant_vertices(g, v1, v2);
  if (detail.relevant.empty())
    throw NoPathError("no path from \"" + g.name(v1) + "\" to \"" +
                      g.name(v2) + "\"");
  detail.scc = scc_decompose(g);

  std::vector<int> nontrivial;
  {
    std::vector<bool> seen(detail.scc.components.size(), false);
    for (VertexId v : detail.relevant) {
      int c = detail.scc.component_of[v];
      if (!seen[c] && detail.scc.components[c].nontrivial) {
        seen[c] = true;
        nontrivial.push_back(c);
      }
    }
    std::sort(nontrivial.begin(), nontrivial.end());
  }

  bool all_cycles = true;
  for (int c : nontrivial) all_cycles &= detail.scc.components[c].is_cycle;

  for (int c : nontrivial) {
    const auto& comp = detail.scc.components[c];
    ComponentAssessment a;
    a.component = c;
    a.is_cycle = comp.is_cycle;
    a.period = comp.period;
    if (comp.is_cycle)
      a.cycle_weight = cycle_rate(g, comp.vertices);
    else
      a.log_rate = solve_log_rate(g, comp.vertices, opts.log_rate);
    detail.components.push_back(a);
  }

  if (nontrivial.empty()) {
    std::uint64_t n = count_dag_paths(g, detail.scc, v1, v2);
    // With no component to dwell in, variants and paths coincide.
    detail.variant_count = n;
    detail.result = AsymptoticClass::finite(n);
  } else if (all_cycles) {
    auto variants = enumerate_variants(g, detail.scc, v1, v2, opts.variants);
    PolynomialRate pr = polynomial_rate(g, detail.scc, variants);
    int dp = max_dwell_count(g, detail.scc, v1, v2);
    if (dp != pr.degree)
      throw std::logic_error("condensation DP degree " + std::to_string(dp) +
                             " disagrees with variant degree " +
                             std::to_string(pr.degree));
    detail.variant_count = variants.size();
    detail.result = AsymptoticClass::polynomial(pr.degree, pr.rate);
  } else {
    double s = kInf;
    for (const auto& a : detail.components)
      if (!a.is_cycle) s = std::min(s, a.log_rate);
    detail.result = AsymptoticClass::logarithmic(s);
  }
  return detail;
}

AsymptoticClass classify(const WeightedDigraph& g, VertexId v1, VertexId v2,
                         const ClassifyOptions& opts) {
  return classify_detail(g, v1, v2, opts).result;
}

AsymptoticClass classify(const WeightedDigraph& g, const std::string& v1,
                         const std::string& v2, const ClassifyOptions& opts) {
  return classify(g, g.vertex(v1), g.vertex(v2), opts);
}

}  // namespace pathrank
