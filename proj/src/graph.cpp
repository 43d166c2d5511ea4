#include "pathrank/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pathrank {

namespace {

using nlohmann::json;

std::string edge_label(std::size_t index, const std::string& from,
                       const std::string& to) {
  std::ostringstream os;
  os << "edge " << index << " (" << from << " -> " << to << ")";
  return os.str();
}

}  // namespace

WeightedDigraph::WeightedDigraph(std::vector<std::string> vertices,
                                 const std::vector<EdgeSpec>& edges)
    : names_(std::move(vertices)) {
  by_name_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto [it, fresh] = by_name_.emplace(names_[i], static_cast<VertexId>(i));
    if (!fresh)
      throw InvalidInput("duplicate vertex name \"" + names_[i] + "\"");
  }
  edges_.reserve(edges.size());
  out_.assign(names_.size(), {});
  in_.assign(names_.size(), {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeSpec& spec = edges[i];
    auto from = by_name_.find(spec.from);
    auto to = by_name_.find(spec.to);
    if (from == by_name_.end())
      throw InvalidInput(edge_label(i, spec.from, spec.to) +
                         ": unknown vertex \"" + spec.from + "\"");
    if (to == by_name_.end())
      throw InvalidInput(edge_label(i, spec.from, spec.to) +
                         ": unknown vertex \"" + spec.to + "\"");
    if (!(spec.weight > 0.0))  // also rejects NaN
      throw InvalidInput(edge_label(i, spec.from, spec.to) +
                         ": non-positive weight " +
                         std::to_string(spec.weight));
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{from->second, to->second, spec.weight});
    out_[from->second].push_back(id);
    in_[to->second].push_back(id);
  }
}

VertexId WeightedDigraph::vertex(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    throw InvalidInput("unknown vertex \"" + name + "\"");
  return it->second;
}

VertexId path_source(const WeightedDigraph& g, const Path& x) {
  if (x.empty()) throw InvalidInput("empty path has no source");
  return g.edge(x.edges.front()).from;
}

VertexId path_target(const WeightedDigraph& g, const Path& x) {
  if (x.empty()) throw InvalidInput("empty path has no target");
  return g.edge(x.edges.back()).to;
}

std::vector<VertexId> path_vertices(const WeightedDigraph& g, const Path& x) {
  std::vector<VertexId> seq;
  seq.reserve(x.length() + 1);
  seq.push_back(path_source(g, x));
  for (EdgeId e : x.edges) seq.push_back(g.edge(e).to);
  return seq;
}

double path_weight(const WeightedDigraph& g, const Path& x) {
  if (x.empty()) throw InvalidInput("empty path has no weight");
  double sum = 0.0;
  VertexId at = -1;
  for (std::size_t i = 0; i < x.edges.size(); ++i) {
    EdgeId id = x.edges[i];
    if (id < 0 || id >= g.edge_count())
      throw InvalidInput("path refers to unknown edge id " +
                         std::to_string(id));
    const Edge& e = g.edge(id);
    if (i > 0 && e.from != at)
      throw InvalidInput("path breaks at position " + std::to_string(i) +
                         ": edge " + std::to_string(id) + " starts at \"" +
                         g.name(e.from) + "\", expected \"" + g.name(at) +
                         "\"");
    sum += e.weight;
    at = e.to;
  }
  return sum;
}

namespace {

WeightedDigraph graph_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("graph document must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("graph document needs a \"vertices\" array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError("graph document needs an \"edges\" array");

  std::vector<std::string> vertices;
  vertices.reserve(doc["vertices"].size());
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string())
      throw ParseError("vertex names must be strings, got " + v.dump());
    vertices.push_back(v.get<std::string>());
  }

  std::vector<EdgeSpec> edges;
  edges.reserve(doc["edges"].size());
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& e = doc["edges"][i];
    if (!e.is_object())
      throw ParseError("edge " + std::to_string(i) + " must be an object");
    if (!e.contains("from") || !e["from"].is_string() || !e.contains("to") ||
        !e["to"].is_string())
      throw ParseError("edge " + std::to_string(i) +
                       " needs string \"from\" and \"to\"");
    const json* w = nullptr;
    if (e.contains("weight"))
      w = &e["weight"];
    else if (e.contains("w"))
      w = &e["w"];
    if (w == nullptr || !w->is_number())
      throw ParseError("edge " + std::to_string(i) +
                       " needs a numeric \"weight\"");
    edges.push_back(EdgeSpec{e["from"].get<std::string>(),
                             e["to"].get<std::string>(), w->get<double>()});
  }

  try {
    return WeightedDigraph(std::move(vertices), edges);
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
}

}  // namespace

WeightedDigraph parse_graph(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("graph JSON is malformed: ") + err.what());
  }
  return graph_from_json(doc);
}

WeightedDigraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string graph_to_json(const WeightedDigraph& g, int indent) {
  json doc;
  doc["vertices"] = g.names();
  doc["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    doc["edges"].push_back({{"from", g.name(e.from)},
                            {"to", g.name(e.to)},
                            {"weight", e.weight}});
  }
  return doc.dump(indent);
}

WeightedDigraph normalize_simple(const WeightedDigraph& g) {
  // Count edges per ordered endpoint pair to find the bundles.
  std::unordered_map<std::uint64_t, int> bundle;
  auto key = [&](const Edge& e) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.from))
            << 32) |
           static_cast<std::uint32_t>(e.to);
  };
  for (const Edge& e : g.edges()) ++bundle[key(e)];

  std::vector<std::string> vertices = g.names();
  std::vector<EdgeSpec> edges;
  edges.reserve(g.edges().size());
  auto fresh_name = [&](EdgeId id) {
    std::string name = "_m" + std::to_string(id);
    while (g.has_vertex(name)) name += "'";
    return name;
  };
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (bundle[key(e)] < 2) {
      edges.push_back(EdgeSpec{g.name(e.from), g.name(e.to), e.weight});
      continue;
    }
    std::string mid = fresh_name(id);
    vertices.push_back(mid);
    edges.push_back(EdgeSpec{g.name(e.from), mid, e.weight / 2.0});
    edges.push_back(EdgeSpec{mid, g.name(e.to), e.weight / 2.0});
  }
  return WeightedDigraph(std::move(vertices), edges);
}

}  // namespace pathrank
