#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hanstream/geometry.hpp"

namespace hanstream {

struct GraphNode {
  std::string id;
  std::optional<std::string> label;
};

struct GraphLink {
  std::size_t source = 0;  // node indices
  std::size_t target = 0;
  double weight = 1.0;
};

struct GraphData {
  std::vector<GraphNode> nodes;
  std::vector<GraphLink> links;

  std::optional<std::size_t> index_of(std::string_view id) const noexcept;
};

/// Parses {"nodes":[{"id","label"?}], "links":[{"source","target","weight"?}]}.
/// Ids may be strings or integers. Rejects dangling endpoints, self-loops,
/// negative weights and duplicate ids.
GraphData parse_graph(std::string_view json_text, std::string_view nodes_key = "nodes",
                      std::string_view links_key = "links");

struct LayoutParams {
  double k_spring = 30.0;
  double rest_length = 0.15;
  double k_repulse = 0.0005;
  double k_center = 1.0;
  double damping = 0.85;
  double dt = 0.02;
  double energy_epsilon = 1e-6;
  int max_iterations = 2000;

  /// Throws Error{InvalidConfig}. Zero force constants are allowed so single
  /// terms can be isolated.
  void validate() const;
};

struct LayoutState {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::vector<std::optional<Vec2>> pins;

  friend bool operator==(const LayoutState&, const LayoutState&) = default;
};

inline constexpr Vec2 kLayoutCenter{0.5, 0.5};
inline constexpr double kInitialRadius = 0.3;
inline constexpr double kMinSeparation = 1e-4;

/// Node i of n sits on a circle of radius 0.3 about (0.5,0.5) at angle
/// i * 2pi / phi. Throws Error{EmptyGraph}.
LayoutState init_layout(const GraphData& graph);

/// One semi-implicit Euler step with velocity damping. Pinned nodes keep
/// their pin bit-for-bit and zero velocity.
LayoutState layout_step(LayoutState state, const GraphData& graph, const LayoutParams& params);

double kinetic_energy(const LayoutState& state) noexcept;

struct StableLayout {
  LayoutState state;
  int iterations = 0;
  bool converged = false;
};

/// Steps at least once, then until kinetic energy < energy_epsilon or
/// max_iterations.
StableLayout run_until_stable(LayoutState state, const GraphData& graph, const LayoutParams& params);

/// Pins node `id` at `pos` with zero velocity. Throws Error{UnknownNode}.
LayoutState drag_node(LayoutState state, const GraphData& graph, std::string_view id, Vec2 pos);
LayoutState drag_node(LayoutState state, std::size_t index, Vec2 pos);

/// Unpins; the node resumes free integration from its current position.
LayoutState release_node(LayoutState state, const GraphData& graph, std::string_view id);
LayoutState release_node(LayoutState state, std::size_t index);

}  // namespace hanstream
