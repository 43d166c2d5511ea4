#include "pathrank/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace pathrank {

namespace {

// Iterative Tarjan; recursion would overflow on expanded graphs.
// Components are emitted sinks-first, which is exactly the reverse
// topological order the rest of the library relies on.
std::vector<std::vector<VertexId>> tarjan_components(
    const WeightedDigraph& g) {
  const int n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> components;
  int next_index = 0;

  struct Frame {
    VertexId v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = g.out_edges(f.v);
      if (f.next_edge < out.size()) {
        VertexId w = g.edge(out[f.next_edge++]).to;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        VertexId v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<VertexId> comp;
          for (;;) {
            VertexId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
      }
    }
  }
  return components;
}

}  // namespace

int period(const WeightedDigraph& g, const std::vector<VertexId>& component) {
  if (component.empty()) throw InvalidInput("period of an empty component");
  std::vector<bool> member(g.vertex_count(), false);
  for (VertexId v : component) member[v] = true;

  std::vector<int> level(g.vertex_count(), -1);
  std::deque<VertexId> queue;
  level[component.front()] = 0;
  queue.push_back(component.front());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).to;
      if (!member[w] || level[w] >= 0) continue;
      level[w] = level[v] + 1;
      queue.push_back(w);
    }
  }
  for (VertexId v : component)
    if (level[v] < 0)
      throw InvalidInput("component is not strongly connected at vertex \"" +
                         g.name(v) + "\"");

  int gcd = 0;
  for (VertexId v : component)
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).to;
      if (!member[w]) continue;
      gcd = std::gcd(gcd, std::abs(level[v] + 1 - level[w]));
    }
  if (gcd == 0)
    throw InvalidInput("component has no closed walk; period is undefined");
  return gcd;
}

SccDecomposition scc_decompose(const WeightedDigraph& g) {
  SccDecomposition scc;
  auto comps = tarjan_components(g);
  const int n = g.vertex_count();
  scc.component_of.assign(n, -1);
  scc.components.reserve(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    SccDecomposition::Component comp;
    comp.vertices = std::move(comps[c]);
    for (VertexId v : comp.vertices)
      scc.component_of[v] = static_cast<int>(c);

    bool self_loop = false;
    if (comp.vertices.size() == 1) {
      for (EdgeId e : g.out_edges(comp.vertices.front()))
        self_loop = self_loop || g.edge(e).to == comp.vertices.front();
    }
    comp.nontrivial = comp.vertices.size() > 1 || self_loop;

    if (comp.nontrivial) {
      // Cycle test: within the induced subgraph every vertex has one
      // edge in and one out.  Parallel edges break it.
      comp.is_cycle = true;
      for (VertexId v : comp.vertices) {
        int out_deg = 0, in_deg = 0;
        for (EdgeId e : g.out_edges(v))
          if (scc.component_of[g.edge(e).to] == static_cast<int>(c))
            ++out_deg;
        for (EdgeId e : g.in_edges(v))
          if (scc.component_of[g.edge(e).from] == static_cast<int>(c))
            ++in_deg;
        if (out_deg != 1 || in_deg != 1) {
          comp.is_cycle = false;
          break;
        }
      }
      comp.period = period(g, comp.vertices);
    }
    scc.components.push_back(std::move(comp));
  }

  for (const Edge& e : g.edges()) {
    int cf = scc.component_of[e.from];
    int ct = scc.component_of[e.to];
    if (cf != ct) scc.condensation_edges.emplace_back(cf, ct);
  }
  std::sort(scc.condensation_edges.begin(), scc.condensation_edges.end());
  scc.condensation_edges.erase(
      std::unique(scc.condensation_edges.begin(),
                  scc.condensation_edges.end()),
      scc.condensation_edges.end());
  return scc;
}

namespace {

// Vertices reachable from the out-neighbourhood of v by >= 1 edge.
std::vector<bool> forward_plus(const WeightedDigraph& g, VertexId v) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexId> queue;
  for (EdgeId e : g.out_edges(v)) {
    VertexId w = g.edge(e).to;
    if (!seen[w]) {
      seen[w] = true;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(u)) {
      VertexId w = g.edge(e).to;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<bool> backward_plus(const WeightedDigraph& g, VertexId v) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexId> queue;
  for (EdgeId e : g.in_edges(v)) {
    VertexId w = g.edge(e).from;
    if (!seen[w]) {
      seen[w] = true;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (EdgeId e : g.in_edges(u)) {
      VertexId w = g.edge(e).from;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<VertexId> relevant_vertices(const WeightedDigraph& g, VertexId v1,
                                        VertexId v2) {
  if (v1 < 0 || v1 >= g.vertex_count() || v2 < 0 || v2 >= g.vertex_count())
    throw InvalidInput("query vertex out of range");
  std::vector<bool> fwd = forward_plus(g, v1);
  std::vector<bool> bwd = backward_plus(g, v2);
  if (v1 != v2) {
    // Reflexive closure at the endpoints: v1 itself qualifies when it
    // can reach v2, and symmetrically for v2.
    fwd[v1] = true;
    bwd[v2] = true;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (fwd[v] && bwd[v]) out.push_back(v);
  return out;
}

std::vector<VertexId> itinerary(const WeightedDigraph& g,
                                const SccDecomposition& scc, const Path& x) {
  std::vector<VertexId> s = path_vertices(g, x);
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t i = 1;
    while (i + 1 < s.size()) {
      if (scc.same_nontrivial_component(s[i - 1], s[i]) &&
          scc.same_nontrivial_component(s[i], s[i + 1])) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  return s;
}

int ItineraryVariant::dwell_count() const {
  int n = 0;
  for (const Transition& t : transitions)
    if (t.kind == Transition::Kind::Dwell) ++n;
  return n;
}

std::vector<int> ItineraryVariant::j1() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].kind == Transition::Kind::Dwell)
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> ItineraryVariant::j2() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].kind == Transition::Kind::Edge)
      out.push_back(static_cast<int>(i));
  return out;
}

bool ItineraryVariant::operator==(const ItineraryVariant& other) const {
  if (itinerary != other.itinerary) return false;
  if (transitions.size() != other.transitions.size()) return false;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& a = transitions[i];
    const Transition& b = other.transitions[i];
    if (a.kind != b.kind) return false;
    if (a.kind == Transition::Kind::Dwell) {
      if (a.component != b.component || a.entry != b.entry ||
          a.exit != b.exit)
        return false;
    } else if (a.edge != b.edge) {
      return false;
    }
  }
  return true;
}

namespace {

struct VariantSearch {
  const WeightedDigraph& g;
  const SccDecomposition& scc;
  const std::vector<bool>& relevant;
  VertexId v2;
  int target_comp;
  std::size_t guard;
  std::vector<ItineraryVariant>* out;

  std::vector<VertexId> itin;
  std::vector<ItineraryVariant::Transition> transitions;

  void emit() {
    if (out->size() >= guard)
      throw GuardExceeded("variant guard exceeded (" + std::to_string(guard) +
                          "); raise the limit to enumerate further");
    ItineraryVariant v;
    v.itinerary = itin;
    v.transitions = transitions;
    out->push_back(std::move(v));
  }

  // Leaves through a bridging edge, or finishes the variant when the
  // exit vertex is the query target.  The target component can only be
  // the last stop of a route, so emission and continuation never both
  // apply.
  void leave(VertexId exit, int comp) {
    if (comp == target_comp) {
      if (exit == v2 && !transitions.empty()) emit();
      return;
    }
    for (EdgeId e : g.out_edges(exit)) {
      VertexId t = g.edge(e).to;
      if (!relevant[t] || scc.component_of[t] == comp) continue;
      ItineraryVariant::Transition tr;
      tr.kind = ItineraryVariant::Transition::Kind::Edge;
      tr.edge = e;
      transitions.push_back(tr);
      visit(t);
      transitions.pop_back();
    }
  }

  void visit(VertexId entry) {
    const int comp = scc.component_of[entry];
    // Pass through: the component contributes a single vertex.
    itin.push_back(entry);
    leave(entry, comp);
    if (scc.components[comp].nontrivial) {
      // Dwell: entry and exit both appear, any exit vertex reachable
      // within the component (all of them, by strong connectivity).
      for (VertexId exit : scc.components[comp].vertices) {
        ItineraryVariant::Transition tr;
        tr.kind = ItineraryVariant::Transition::Kind::Dwell;
        tr.component = comp;
        tr.entry = entry;
        tr.exit = exit;
        transitions.push_back(tr);
        itin.push_back(exit);
        leave(exit, comp);
        itin.pop_back();
        transitions.pop_back();
      }
    }
    itin.pop_back();
  }
};

}  // namespace

std::vector<ItineraryVariant> enumerate_variants(const WeightedDigraph& g,
                                                 const SccDecomposition& scc,
                                                 VertexId v1, VertexId v2,
                                                 const VariantOptions& opts) {
  std::vector<VertexId> rel = relevant_vertices(g, v1, v2);
  std::vector<ItineraryVariant> variants;
  if (rel.empty()) return variants;
  std::vector<bool> mask(g.vertex_count(), false);
  for (VertexId v : rel) mask[v] = true;

  VariantSearch search{g,    scc,        mask, v2, scc.component_of[v2],
                       opts.guard, &variants, {},   {}};
  search.visit(v1);
  return variants;
}

PathFactors factor_path(const WeightedDigraph& g, const SccDecomposition& scc,
                        const Path& x) {
  std::vector<VertexId> u = path_vertices(g, x);
  const std::size_t k = x.length();
  PathFactors out;

  std::size_t i = 0;
  for (;;) {
    const int comp = scc.component_of[u[i]];
    bool nontrivial = scc.components[comp].nontrivial;
    std::size_t j = i;
    if (nontrivial)
      while (j < k && scc.component_of[u[j + 1]] == comp) ++j;

    if (j > i) {
      ItineraryVariant::Transition tr;
      tr.kind = ItineraryVariant::Transition::Kind::Dwell;
      tr.component = comp;
      tr.entry = u[i];
      tr.exit = u[j];
      out.variant.itinerary.push_back(u[i]);
      out.variant.itinerary.push_back(u[j]);
      out.variant.transitions.push_back(tr);
      out.segments.emplace_back(x.edges.begin() + static_cast<long>(i),
                                x.edges.begin() + static_cast<long>(j));
    } else {
      out.variant.itinerary.push_back(u[i]);
    }

    if (j == k) break;
    ItineraryVariant::Transition tr;
    tr.kind = ItineraryVariant::Transition::Kind::Edge;
    tr.edge = x.edges[j];
    out.variant.transitions.push_back(tr);
    out.segments.push_back({x.edges[j]});
    i = j + 1;
  }
  return out;
}

std::uint64_t count_dag_paths(const WeightedDigraph& g,
                              const SccDecomposition& scc, VertexId v1,
                              VertexId v2) {
  std::vector<VertexId> rel = relevant_vertices(g, v1, v2);
  if (rel.empty()) return 0;
  std::vector<bool> mask(g.vertex_count(), false);
  for (VertexId v : rel) {
    if (scc.components[scc.component_of[v]].nontrivial)
      throw InvalidInput(
          "path count is infinite: relevant vertex \"" + g.name(v) +
          "\" lies in a strongly connected component");
    mask[v] = true;
  }

  auto saturating_add = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
  };

  // Reverse topological component order doubles as a vertex order on
  // the induced DAG: sinks first.
  std::vector<VertexId> order = rel;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return scc.component_of[a] < scc.component_of[b];
  });
  std::vector<std::uint64_t> count(g.vertex_count(), 0);
  for (VertexId v : order) {
    std::uint64_t total = v == v2 ? 1 : 0;
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).to;
      if (mask[w]) total = saturating_add(total, count[w]);
    }
    count[v] = total;
  }
  return count[v1];
}

int max_dwell_count(const WeightedDigraph& g, const SccDecomposition& scc,
                    VertexId v1, VertexId v2) {
  std::vector<VertexId> rel = relevant_vertices(g, v1, v2);
  if (rel.empty()) return 0;
  std::vector<bool> comp_in(scc.components.size(), false);
  for (VertexId v : rel) comp_in[scc.component_of[v]] = true;

  const int c1 = scc.component_of[v1];
  const int c2 = scc.component_of[v2];
  // value[c]: best cycle-component count of a condensation route from
  // c to c2; -1 while unreachable.  Ascending index = sinks first.
  std::vector<int> value(scc.components.size(), -1);
  auto weight = [&](int c) {
    return scc.components[c].nontrivial && scc.components[c].is_cycle ? 1 : 0;
  };
  value[c2] = weight(c2);
  auto edge_it = scc.condensation_edges.begin();
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!comp_in[c]) continue;
    // condensation_edges is sorted with from > to, so by the time we
    // reach component c all its successors are final.
    int best = -1;
    while (edge_it != scc.condensation_edges.end() &&
           edge_it->first < static_cast<int>(c))
      ++edge_it;
    for (auto it = edge_it;
         it != scc.condensation_edges.end() && it->first == static_cast<int>(c);
         ++it) {
      if (comp_in[it->second] && value[it->second] >= 0)
        best = std::max(best, value[it->second]);
    }
    if (best >= 0)
      value[c] = std::max(value[c], weight(static_cast<int>(c)) + best);
  }
  return std::max(value[c1], 0);
}

}  // namespace pathrank
