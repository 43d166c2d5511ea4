#include "pathrank/report.hpp"

namespace pathrank {

using nlohmann::json;

json class_json(const AsymptoticClass& c) {
  json j;
  switch (c.kind) {
    case AsymptoticClass::Case::Finite:
      j["case"] = "finite";
      j["count"] = c.count;
      break;
    case AsymptoticClass::Case::Polynomial:
      j["case"] = "polynomial";
      j["c"] = c.degree;
      j["s"] = c.rate;
      break;
    case AsymptoticClass::Case::Logarithmic:
      j["case"] = "logarithmic";
      j["s"] = c.rate;
      j["loglog_slope"] = -c.rate;
      break;
  }
  return j;
}

namespace {

json name_list(const WeightedDigraph& g, const std::vector<VertexId>& vs) {
  json arr = json::array();
  for (VertexId v : vs) arr.push_back(g.name(v));
  return arr;
}

}  // namespace

json analysis_json(const WeightedDigraph& g, VertexId v1, VertexId v2,
                   const ClassificationDetail& detail) {
  // The classification keys sit at the top level; everything else is
  // supporting context.
  json j = class_json(detail.result);
  j["query"] = {{"source", g.name(v1)}, {"target", g.name(v2)}};
  j["graph"] = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
  j["relevant_count"] = detail.relevant.size();
  j["relevant_vertices"] = name_list(g, detail.relevant);

  json comps = json::array();
  for (const auto& a : detail.components) {
    const auto& comp = detail.scc.components[a.component];
    json c;
    c["vertices"] = name_list(g, comp.vertices);
    c["is_cycle"] = a.is_cycle;
    c["period"] = a.period;
    if (a.is_cycle)
      c["w0"] = a.cycle_weight;
    else
      c["s"] = a.log_rate;
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);

  if (detail.variant_count) j["variant_count"] = *detail.variant_count;
  return j;
}

json variant_json(const WeightedDigraph& g, const ItineraryVariant& v) {
  json j;
  j["itinerary"] = name_list(g, v.itinerary);
  json steps = json::array();
  for (const auto& t : v.transitions) {
    json step;
    if (t.kind == ItineraryVariant::Transition::Kind::Dwell) {
      step["dwell"] = {{"entry", g.name(t.entry)}, {"exit", g.name(t.exit)}};
    } else {
      const Edge& e = g.edge(t.edge);
      step["edge"] = {{"id", t.edge},
                      {"from", g.name(e.from)},
                      {"to", g.name(e.to)},
                      {"weight", e.weight}};
    }
    steps.push_back(std::move(step));
  }
  j["transitions"] = std::move(steps);
  return j;
}

}  // namespace pathrank
