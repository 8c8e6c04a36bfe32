#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hanstream/chart_spec.hpp"
#include "hanstream/dataset.hpp"
#include "hanstream/dimpvis.hpp"
#include "hanstream/geometry.hpp"
#include "hanstream/graph_layout.hpp"

namespace hanstream {

inline constexpr double kScaleMin = 0.25;
inline constexpr double kScaleMax = 8.0;
inline constexpr double kHitRadius = 0.02;
inline constexpr double kPointRadius = 0.01;
inline constexpr double kNodeRadius = 0.015;
inline constexpr double kBandPadding = 0.1;

/// screen = world * s + t.
struct ViewTransform {
  double s = 1.0;
  double tx = 0.0;
  double ty = 0.0;

  Vec2 translation() const noexcept { return {tx, ty}; }
  Vec2 to_screen(Vec2 w) const noexcept { return {w.x * s + tx, w.y * s + ty}; }
  Vec2 to_world(Vec2 p) const noexcept { return {(p.x - tx) / s, (p.y - ty) / s}; }
  friend bool operator==(const ViewTransform&, const ViewTransform&) = default;
};

/// Rectangle in which bar and line charts place their marks; the remaining
/// margin holds axis labels.
struct PlotArea {
  double x0 = 0.08, y0 = 0.04, x1 = 0.98, y1 = 0.92;
  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
};
inline constexpr PlotArea kPlotArea{};

enum class Layer { Background = 0, Marks = 1, Highlight = 2, Overlay = 3 };
std::string_view layer_name(Layer l) noexcept;

struct RectShape {
  double x = 0, y = 0, w = 0, h = 0;
  friend bool operator==(const RectShape&, const RectShape&) = default;
};
struct CircleShape {
  double cx = 0, cy = 0, r = 0;
  friend bool operator==(const CircleShape&, const CircleShape&) = default;
};
struct PolylineShape {
  std::vector<Vec2> points;
  friend bool operator==(const PolylineShape&, const PolylineShape&) = default;
};
struct TextShape {
  Vec2 pos;
  std::string content;
  friend bool operator==(const TextShape&, const TextShape&) = default;
};
using Shape = std::variant<RectShape, CircleShape, PolylineShape, TextShape>;

/// Style tokens; clients own concrete colors. color -1 is the neutral ink.
struct Style {
  int color = 0;
  bool emphasis = false;
  friend bool operator==(const Style&, const Style&) = default;
};

struct Mark {
  std::string id;
  Shape shape;
  Layer layer = Layer::Marks;
  Style style;
  bool hit = false;
  std::optional<std::size_t> row;   // dataset row behind the mark
  std::optional<std::size_t> item;  // node index or trajectory index
};

struct Tooltip {
  Vec2 anchor;  // world coordinates
  std::vector<std::string> lines;
};

struct NetworkState {
  GraphData graph;
  LayoutState layout;
  LayoutParams params;
};

struct DimpVisState {
  TrajectorySet set;
  DimpState nav;
};

struct Scene {
  ChartSpec spec;
  Dataset data;
  std::vector<Mark> marks;
  ViewTransform transform;
  std::optional<std::string> highlight;
  std::optional<Tooltip> tooltip;
  std::optional<NetworkState> network;
  std::optional<DimpVisState> dimpvis;

  std::optional<std::size_t> find_mark(std::string_view id) const noexcept;
};

using ChartData = std::variant<Dataset, GraphData>;

/// Checks that every field the spec binds exists with a usable type.
/// Throws Error{SpecError} naming the field.
void validate_spec(const ChartSpec& spec, const ChartData& data);

/// Builds marks for the chart with an identity transform. Network scenes are
/// laid out to stability; DimpVis scenes start at t = 0.
Scene build_scene(const ChartSpec& spec, const ChartData& data, const LayoutParams& layout_params = {});

/// Re-derives node/edge or bubble geometry from the live layout or time
/// cursor. Mark ids are stable.
void sync_marks(Scene& scene);

/// Sets the highlight and fills the tooltip, or clears both.
void set_highlight(Scene& scene, std::optional<std::size_t> mark_index);

/// Index of the hit mark nearest to the screen point (containment distance
/// 0 for rects, edge distance for circles), ties to scene order.
std::optional<std::size_t> hit_test_index(const Scene& scene, Vec2 screen_point, double hit_radius = kHitRadius);
std::optional<std::string> hit_test(const Scene& scene, Vec2 screen_point, double hit_radius = kHitRadius);

struct RenderCommand {
  Layer layer = Layer::Marks;
  std::string id;
  Shape shape;  // screen coordinates
  Style style;
  friend bool operator==(const RenderCommand&, const RenderCommand&) = default;
};

/// Layer-ordered drawing list: Background, Marks, Highlight, Overlay.
std::vector<RenderCommand> render_scene(const Scene& scene);

Shape transform_shape(const Shape& shape, const ViewTransform& t);

nlohmann::json to_json(const RenderCommand& cmd);
nlohmann::json to_json(const ViewTransform& t);

/// Same documents as to_json, written straight to text (keys in sorted order).
void append_json(std::string& out, const RenderCommand& cmd);
void append_json(std::string& out, const ViewTransform& t);

}  // namespace hanstream
