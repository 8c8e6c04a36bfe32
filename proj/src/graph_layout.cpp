#include "hanstream/graph_layout.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "json.hpp"

#include "hanstream/error.hpp"

namespace hanstream {

std::optional<std::size_t> GraphData::index_of(std::string_view id) const noexcept {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

std::string id_text(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(Errc::SchemaError, where + " must be a string or integer id");
}

}  // namespace

GraphData parse_graph(std::string_view json_text, std::string_view nodes_key, std::string_view links_key) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::SchemaError, "graph document must be an object");
  const auto nodes = doc.find(nodes_key);
  if (nodes == doc.end() || !nodes->is_array()) {
    throw Error(Errc::SchemaError, "graph is missing array '" + std::string(nodes_key) + "'");
  }

  GraphData graph;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const auto& jn = (*nodes)[i];
    const std::string where = std::string(nodes_key) + "[" + std::to_string(i) + "]";
    if (!jn.is_object() || !jn.contains("id")) throw Error(Errc::SchemaError, where + " needs an id");
    GraphNode node{id_text(jn["id"], where + ".id"), std::nullopt};
    if (auto label = jn.find("label"); label != jn.end() && label->is_string()) node.label = label->get<std::string>();
    if (!index.emplace(node.id, i).second) throw Error(Errc::DuplicateId, node.id);
    graph.nodes.push_back(std::move(node));
  }

  const auto links = doc.find(links_key);
  if (links != doc.end()) {
    if (!links->is_array()) throw Error(Errc::SchemaError, "'" + std::string(links_key) + "' must be an array");
    for (std::size_t i = 0; i < links->size(); ++i) {
      const auto& jl = (*links)[i];
      const std::string where = std::string(links_key) + "[" + std::to_string(i) + "]";
      if (!jl.is_object() || !jl.contains("source") || !jl.contains("target")) {
        throw Error(Errc::SchemaError, where + " needs source and target");
      }
      const auto source = id_text(jl["source"], where + ".source");
      const auto target = id_text(jl["target"], where + ".target");
      const auto s = index.find(source);
      const auto t = index.find(target);
      if (s == index.end()) throw Error(Errc::SpecError, where + " references unknown node '" + source + "'");
      if (t == index.end()) throw Error(Errc::SpecError, where + " references unknown node '" + target + "'");
      if (s->second == t->second) throw Error(Errc::SpecError, where + " is a self-loop");
      double weight = 1.0;
      if (auto w = jl.find("weight"); w != jl.end() && !w->is_null()) {
        if (!w->is_number() || w->get<double>() < 0.0) throw Error(Errc::SpecError, where + ".weight must be >= 0");
        weight = w->get<double>();
      }
      graph.links.push_back({s->second, t->second, weight});
    }
  }
  return graph;
}

void LayoutParams::validate() const {
  const bool ok = k_spring >= 0.0 && rest_length > 0.0 && k_repulse >= 0.0 && k_center >= 0.0 && damping > 0.0 &&
                  damping < 1.0 && dt > 0.0 && energy_epsilon > 0.0 && max_iterations > 0;
  if (!ok) throw Error(Errc::InvalidConfig, "layout parameters out of range");
}

LayoutState init_layout(const GraphData& graph) {
  if (graph.nodes.empty()) throw Error(Errc::EmptyGraph, "graph has no nodes");
  const std::size_t n = graph.nodes.size();
  const double step = 2.0 * std::numbers::pi / std::numbers::phi;
  LayoutState state;
  state.positions.resize(n);
  state.velocities.assign(n, Vec2{});
  state.pins.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = static_cast<double>(i) * step;
    state.positions[i] = kLayoutCenter + Vec2{std::cos(angle), std::sin(angle)} * kInitialRadius;
  }
  return state;
}

namespace {

// Unit vector from b to a, with a fixed fallback for coincident points.
Vec2 separation(Vec2 a, Vec2 b, double& d) {
  const Vec2 delta = a - b;
  d = norm(delta);
  if (d == 0.0) return {1.0, 0.0};
  return delta / d;
}

}  // namespace

LayoutState layout_step(LayoutState state, const GraphData& graph, const LayoutParams& params) {
  const std::size_t n = state.positions.size();
  std::vector<Vec2> force(n);

  if (params.k_repulse > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = 0.0;
        const Vec2 u = separation(state.positions[i], state.positions[j], d);
        const double clamped = std::max(d, kMinSeparation);
        const Vec2 f = u * (params.k_repulse / (clamped * clamped));
        force[i] += f;
        force[j] -= f;
      }
    }
  }

  for (const auto& link : graph.links) {
    double d = 0.0;
    const Vec2 u = separation(state.positions[link.target], state.positions[link.source], d);
    const Vec2 f = u * (params.k_spring * link.weight * (d - params.rest_length));
    force[link.source] += f;
    force[link.target] -= f;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (state.pins[i]) {
      state.positions[i] = *state.pins[i];
      state.velocities[i] = Vec2{};
      continue;
    }
    const Vec2 total = force[i] + (kLayoutCenter - state.positions[i]) * params.k_center;
    state.velocities[i] = (state.velocities[i] + total * params.dt) * params.damping;
    state.positions[i] += state.velocities[i] * params.dt;
  }
  return state;
}

double kinetic_energy(const LayoutState& state) noexcept {
  double e = 0.0;
  for (const auto& v : state.velocities) e += 0.5 * dot(v, v);
  return e;
}

StableLayout run_until_stable(LayoutState state, const GraphData& graph, const LayoutParams& params) {
  StableLayout out{std::move(state), 0, false};
  while (out.iterations < params.max_iterations) {
    out.state = layout_step(std::move(out.state), graph, params);
    ++out.iterations;
    if (kinetic_energy(out.state) < params.energy_epsilon) {
      out.converged = true;
      break;
    }
  }
  return out;
}

LayoutState drag_node(LayoutState state, std::size_t index, Vec2 pos) {
  if (index >= state.positions.size()) throw Error(Errc::UnknownNode, "node index " + std::to_string(index));
  state.pins[index] = pos;
  state.positions[index] = pos;
  state.velocities[index] = Vec2{};
  return state;
}

LayoutState drag_node(LayoutState state, const GraphData& graph, std::string_view id, Vec2 pos) {
  const auto index = graph.index_of(id);
  if (!index) throw Error(Errc::UnknownNode, std::string(id));
  return drag_node(std::move(state), *index, pos);
}

LayoutState release_node(LayoutState state, std::size_t index) {
  if (index >= state.positions.size()) throw Error(Errc::UnknownNode, "node index " + std::to_string(index));
  state.pins[index].reset();
  return state;
}

LayoutState release_node(LayoutState state, const GraphData& graph, std::string_view id) {
  const auto index = graph.index_of(id);
  if (!index) throw Error(Errc::UnknownNode, std::string(id));
  return release_node(std::move(state), *index);
}

}  // namespace hanstream
