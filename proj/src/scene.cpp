#include "hanstream/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hanstream/error.hpp"
#include "hanstream/json_text.hpp"
#include "hanstream/scales.hpp"

namespace hanstream {

std::string_view chart_kind(const ChartSpec& spec) noexcept {
  switch (spec.index()) {
    case 0: return "bar";
    case 1: return "multiline";
    case 2: return "network";
    default: return "dimpvis";
  }
}

std::string_view layer_name(Layer l) noexcept {
  switch (l) {
    case Layer::Background: return "background";
    case Layer::Marks: return "marks";
    case Layer::Highlight: return "highlight";
    case Layer::Overlay: return "overlay";
  }
  return "?";
}

std::optional<std::size_t> Scene::find_mark(std::string_view id) const noexcept {
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

const Dataset& table_of(const ChartSpec& spec, const ChartData& data) {
  const auto* ds = std::get_if<Dataset>(&data);
  if (!ds) throw Error(Errc::SpecError, std::string(chart_kind(spec)) + " chart needs a tabular dataset");
  return *ds;
}

std::size_t field(const Dataset& ds, const std::string& name) {
  const auto idx = ds.column_index(name);
  if (!idx) throw Error(Errc::SpecError, "field '" + name + "' not found in dataset");
  return *idx;
}

std::size_t numeric_field(const Dataset& ds, const std::string& name) {
  const std::size_t idx = field(ds, name);
  const auto type = ds.columns[idx].type;
  bool ok = type == ColumnType::Number;
  if (type == ColumnType::TimeIndex) {
    ok = std::all_of(ds.rows.begin(), ds.rows.end(),
                     [&](const auto& row) { return !std::holds_alternative<std::string>(row[idx]); });
  }
  if (!ok) throw Error(Errc::SpecError, "field '" + name + "' must be numeric");
  return idx;
}

double number_at(const Dataset& ds, std::size_t row, std::size_t col) {
  const auto* v = std::get_if<double>(&ds.rows[row][col]);
  if (!v) {
    throw Error(Errc::SpecError, "field '" + ds.columns[col].name + "' is missing in row " + std::to_string(row + 1));
  }
  return *v;
}

LinearScale fitted(double lo, double hi, double r0, double r1) {
  if (!(lo < hi)) {
    lo -= 1.0;
    hi += 1.0;
  }
  return LinearScale(lo, hi, r0, r1);
}

void add_axes(Scene& scene, const PlotArea& area) {
  scene.marks.push_back({"axis:x", PolylineShape{{{area.x0, area.y1}, {area.x1, area.y1}}}, Layer::Background,
                         Style{-1, false}, false, std::nullopt, std::nullopt});
  scene.marks.push_back({"axis:y", PolylineShape{{{area.x0, area.y0}, {area.x0, area.y1}}}, Layer::Background,
                         Style{-1, false}, false, std::nullopt, std::nullopt});
}

void add_text(Scene& scene, std::string id, Vec2 pos, std::string content) {
  scene.marks.push_back(
      {std::move(id), TextShape{pos, std::move(content)}, Layer::Background, Style{-1, false}, false, {}, {}});
}

void build_bar(Scene& scene, const BarSpec& spec) {
  const Dataset& ds = scene.data;
  const std::size_t cat = field(ds, spec.category_field);
  const std::size_t val = numeric_field(ds, spec.value_field);
  const PlotArea area = kPlotArea;

  std::vector<std::string> names;
  double max_value = 0.0;
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    const std::string name = format_cell(ds.rows[r][cat]);
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      throw Error(Errc::SpecError, "field '" + spec.category_field + "' repeats category '" + name + "'");
    }
    names.push_back(name);
    const double v = number_at(ds, r, val);
    if (v < 0.0) throw Error(Errc::SpecError, "field '" + spec.value_field + "' has a negative value");
    max_value = std::max(max_value, v);
  }

  const auto bands = band_scale(names.size(), area.width(), kBandPadding);
  const LinearScale y(0.0, max_value > 0.0 ? max_value : 1.0, area.y1, area.y0);

  add_axes(scene, area);
  add_text(scene, "label:max", {0.01, area.y0}, format_number(max_value));
  for (std::size_t i = 0; i < names.size(); ++i) {
    add_text(scene, "label:" + names[i], {area.x0 + bands[i].offset + bands[i].width / 2.0, 0.97}, names[i]);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double top = y(number_at(ds, i, val));
    scene.marks.push_back({"bar:" + names[i], RectShape{area.x0 + bands[i].offset, top, bands[i].width, area.y1 - top},
                           Layer::Marks, Style{0, false}, true, i, std::nullopt});
  }
}

void build_multiline(Scene& scene, const MultiLineSpec& spec) {
  const Dataset& ds = scene.data;
  const std::size_t xc = numeric_field(ds, spec.x_field);
  const std::size_t yc = numeric_field(ds, spec.y_field);
  const std::size_t sc = field(ds, spec.series_field);
  const PlotArea area = kPlotArea;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  std::vector<std::string> series;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    const double x = number_at(ds, r, xc);
    const double y = number_at(ds, r, yc);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    const std::string name = format_cell(ds.rows[r][sc]);
    auto it = std::find(series.begin(), series.end(), name);
    if (it == series.end()) {
      series.push_back(name);
      members.emplace_back();
      it = series.end() - 1;
    }
    members[static_cast<std::size_t>(it - series.begin())].push_back(r);
  }
  const LinearScale xs = fitted(x_lo, x_hi, area.x0, area.x1);
  const LinearScale ys = fitted(y_lo, y_hi, area.y1, area.y0);

  add_axes(scene, area);
  add_text(scene, "label:x-min", {area.x0, 0.97}, format_number(x_lo));
  add_text(scene, "label:x-max", {area.x1, 0.97}, format_number(x_hi));
  add_text(scene, "label:y-max", {0.01, area.y0}, format_number(y_hi));

  for (std::size_t s = 0; s < series.size(); ++s) {
    auto rows = members[s];
    std::stable_sort(rows.begin(), rows.end(),
                     [&](std::size_t a, std::size_t b) { return number_at(ds, a, xc) < number_at(ds, b, xc); });
    PolylineShape line;
    for (std::size_t r : rows) line.points.push_back({xs(number_at(ds, r, xc)), ys(number_at(ds, r, yc))});
    scene.marks.push_back({"series:" + series[s], std::move(line), Layer::Marks, Style{static_cast<int>(s), false},
                           false, std::nullopt, s});
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (std::size_t r : members[s]) {
      scene.marks.push_back({"point:" + std::to_string(r),
                             CircleShape{xs(number_at(ds, r, xc)), ys(number_at(ds, r, yc)), kPointRadius},
                             Layer::Marks, Style{static_cast<int>(s), false}, true, r, s});
    }
  }
}

Dataset node_table(const GraphData& graph) {
  Dataset ds;
  ds.columns = {{"id", ColumnType::Text}, {"label", ColumnType::Text}, {"degree", ColumnType::Number}};
  std::vector<double> degree(graph.nodes.size(), 0.0);
  for (const auto& l : graph.links) {
    degree[l.source] += 1.0;
    degree[l.target] += 1.0;
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    ds.rows.push_back({Cell{n.id}, n.label ? Cell{*n.label} : Cell{}, Cell{degree[i]}});
  }
  return ds;
}

void build_network(Scene& scene, const GraphData& graph, const LayoutParams& params) {
  params.validate();
  auto layout = run_until_stable(init_layout(graph), graph, params);
  scene.network = NetworkState{graph, std::move(layout.state), params};
  scene.data = node_table(graph);
  for (std::size_t i = 0; i < graph.links.size(); ++i) {
    scene.marks.push_back(
        {"edge:" + std::to_string(i), PolylineShape{}, Layer::Marks, Style{-1, false}, false, std::nullopt, i});
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    scene.marks.push_back(
        {"node:" + graph.nodes[i].id, CircleShape{0, 0, kNodeRadius}, Layer::Marks, Style{0, false}, true, i, i});
  }
  sync_marks(scene);
}

void build_dimpvis(Scene& scene, const DimpVisSpec& spec) {
  numeric_field(scene.data, spec.x_field);
  numeric_field(scene.data, spec.y_field);
  if (spec.size_field) numeric_field(scene.data, *spec.size_field);
  DimpVisState dv{build_trajectories(scene.data, spec), {}};
  dv.nav.cursor = {0.0, dv.set.time_labels};
  scene.dimpvis = std::move(dv);

  const PlotArea area{kDimpInsetMin - 0.05, kDimpInsetMin - 0.05, kDimpInsetMax + 0.05, kDimpInsetMax + 0.05};
  add_axes(scene, area);
  add_text(scene, "time-label", {0.5, 0.55}, "");
  scene.marks.push_back({"trail", PolylineShape{}, Layer::Background, Style{-1, false}, false, {}, {}});
  const auto& trajs = scene.dimpvis->set.trajectories;
  for (std::size_t e = 0; e < trajs.size(); ++e) {
    scene.marks.push_back({"bubble:" + trajs[e].entity, CircleShape{}, Layer::Marks,
                           Style{static_cast<int>(e), false}, true, trajs[e].rows.front(), e});
  }
  sync_marks(scene);
}

std::vector<std::string> row_lines(const Dataset& ds, std::size_t row) {
  std::vector<std::string> lines;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    lines.push_back(ds.columns[c].name + ": " + format_cell(ds.rows[row][c]));
  }
  return lines;
}

Vec2 tooltip_anchor(const Shape& shape) {
  if (const auto* r = std::get_if<RectShape>(&shape)) return {r->x + r->w / 2.0, r->y};
  if (const auto* c = std::get_if<CircleShape>(&shape)) return {c->cx, c->cy - c->r};
  if (const auto* t = std::get_if<TextShape>(&shape)) return t->pos;
  const auto& pts = std::get<PolylineShape>(shape).points;
  return pts.empty() ? Vec2{} : pts.front();
}

}  // namespace

void validate_spec(const ChartSpec& spec, const ChartData& data) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NetworkSpec>) {
          if (!std::holds_alternative<GraphData>(data)) throw Error(Errc::SpecError, "network chart needs graph data");
          if (std::get<GraphData>(data).nodes.empty()) throw Error(Errc::EmptyGraph, "graph has no nodes");
        } else {
          const Dataset& ds = table_of(spec, data);
          if constexpr (std::is_same_v<T, BarSpec>) {
            field(ds, s.category_field);
            numeric_field(ds, s.value_field);
          } else if constexpr (std::is_same_v<T, MultiLineSpec>) {
            numeric_field(ds, s.x_field);
            numeric_field(ds, s.y_field);
            field(ds, s.series_field);
          } else {
            field(ds, s.entity_field);
            field(ds, s.time_field);
            numeric_field(ds, s.x_field);
            numeric_field(ds, s.y_field);
            if (s.size_field) numeric_field(ds, *s.size_field);
          }
        }
      },
      spec);
}

Scene build_scene(const ChartSpec& spec, const ChartData& data, const LayoutParams& layout_params) {
  validate_spec(spec, data);
  Scene scene;
  scene.spec = spec;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NetworkSpec>) {
          build_network(scene, std::get<GraphData>(data), layout_params);
        } else {
          scene.data = std::get<Dataset>(data);
          if constexpr (std::is_same_v<T, BarSpec>) {
            build_bar(scene, s);
          } else if constexpr (std::is_same_v<T, MultiLineSpec>) {
            build_multiline(scene, s);
          } else {
            build_dimpvis(scene, s);
          }
        }
      },
      spec);
  return scene;
}

void sync_marks(Scene& scene) {
  if (scene.network) {
    const auto& pos = scene.network->layout.positions;
    const auto& graph = scene.network->graph;
    for (auto& mark : scene.marks) {
      if (!mark.item) continue;
      if (auto* line = std::get_if<PolylineShape>(&mark.shape)) {
        const auto& link = graph.links[*mark.item];
        line->points = {pos[link.source], pos[link.target]};
      } else if (auto* c = std::get_if<CircleShape>(&mark.shape)) {
        c->cx = pos[*mark.item].x;
        c->cy = pos[*mark.item].y;
      }
    }
  }
  if (scene.dimpvis) {
    const auto& dv = *scene.dimpvis;
    const double t = dv.nav.cursor.t;
    const auto poses = positions_at(dv.set, t);
    const auto nearest = static_cast<std::size_t>(std::lround(t));
    for (auto& mark : scene.marks) {
      if (mark.item) {
        auto& c = std::get<CircleShape>(mark.shape);
        c = {poses[*mark.item].position.x, poses[*mark.item].position.y, poses[*mark.item].size};
        mark.row = dv.set.trajectories[*mark.item].rows[nearest];
      } else if (mark.id == "time-label") {
        std::get<TextShape>(mark.shape).content = dv.nav.cursor.label();
      } else if (mark.id == "trail") {
        auto& pts = std::get<PolylineShape>(mark.shape).points;
        pts.clear();
        if (dv.nav.grabbed) {
          const auto& traj = dv.set.trajectories[*dv.nav.grabbed];
          const long last = static_cast<long>(traj.positions.size()) - 1;
          const long lo = std::max(0L, static_cast<long>(std::floor(t)) - dv.nav.window);
          const long hi = std::min(last, static_cast<long>(std::ceil(t)) + dv.nav.window);
          for (long k = lo; k <= hi; ++k) pts.push_back(traj.positions[static_cast<std::size_t>(k)]);
        }
      }
    }
  }
}

void set_highlight(Scene& scene, std::optional<std::size_t> mark_index) {
  if (!mark_index) {
    scene.highlight.reset();
    scene.tooltip.reset();
    return;
  }
  const Mark& mark = scene.marks.at(*mark_index);
  scene.highlight = mark.id;
  Tooltip tip{tooltip_anchor(mark.shape), {}};
  if (mark.row && *mark.row < scene.data.rows.size()) tip.lines = row_lines(scene.data, *mark.row);
  scene.tooltip = std::move(tip);
}

namespace {

// Distance used for ranking hits; nullopt when the point misses the mark.
std::optional<double> hit_distance(const Shape& shape, Vec2 p, double hit_radius) {
  if (const auto* r = std::get_if<RectShape>(&shape)) {
    if (p.x >= r->x && p.x <= r->x + r->w && p.y >= r->y && p.y <= r->y + r->h) return 0.0;
    return std::nullopt;
  }
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    const double d = distance(p, {c->cx, c->cy});
    if (d <= c->r + hit_radius) return std::max(0.0, d - c->r);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> hit_test_index(const Scene& scene, Vec2 screen_point, double hit_radius) {
  const Vec2 p = scene.transform.to_world(screen_point);
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scene.marks.size(); ++i) {
    const Mark& m = scene.marks[i];
    if (!m.hit) continue;
    if (auto d = hit_distance(m.shape, p, hit_radius); d && *d < best_d) {
      best_d = *d;
      best = i;
    }
  }
  return best;
}

std::optional<std::string> hit_test(const Scene& scene, Vec2 screen_point, double hit_radius) {
  if (auto i = hit_test_index(scene, screen_point, hit_radius)) return scene.marks[*i].id;
  return std::nullopt;
}

Shape transform_shape(const Shape& shape, const ViewTransform& t) {
  return std::visit(
      [&](const auto& s) -> Shape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RectShape>) {
          const Vec2 o = t.to_screen({s.x, s.y});
          return RectShape{o.x, o.y, s.w * t.s, s.h * t.s};
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          const Vec2 c = t.to_screen({s.cx, s.cy});
          return CircleShape{c.x, c.y, s.r * t.s};
        } else if constexpr (std::is_same_v<T, PolylineShape>) {
          PolylineShape out;
          out.points.reserve(s.points.size());
          for (const auto& p : s.points) out.points.push_back(t.to_screen(p));
          return out;
        } else {
          return TextShape{t.to_screen(s.pos), s.content};
        }
      },
      shape);
}

std::vector<RenderCommand> render_scene(const Scene& scene) {
  std::vector<RenderCommand> out;
  out.reserve(scene.marks.size() + 8);
  for (Layer layer : {Layer::Background, Layer::Marks}) {
    for (const auto& m : scene.marks) {
      if (m.layer == layer) out.push_back({layer, m.id, transform_shape(m.shape, scene.transform), m.style});
    }
  }
  if (!scene.highlight) return out;
  const auto idx = scene.find_mark(*scene.highlight);
  if (!idx) return out;
  const Mark& m = scene.marks[*idx];
  out.push_back({Layer::Highlight, m.id, transform_shape(m.shape, scene.transform), Style{m.style.color, true}});

  if (scene.tooltip && !scene.tooltip->lines.empty()) {
    constexpr double kLine = 0.03, kPad = 0.01, kCharWidth = 0.009;
    std::size_t longest = 0;
    for (const auto& l : scene.tooltip->lines) longest = std::max(longest, l.size());
    const double w = 2 * kPad + kCharWidth * static_cast<double>(longest);
    const double h = 2 * kPad + kLine * static_cast<double>(scene.tooltip->lines.size());
    const Vec2 a = scene.transform.to_screen(scene.tooltip->anchor);
    const double x = std::clamp(a.x + kPad, 0.0, std::max(0.0, 1.0 - w));
    const double y = std::clamp(a.y - kPad - h, 0.0, std::max(0.0, 1.0 - h));
    out.push_back({Layer::Overlay, "tooltip", RectShape{x, y, w, h}, Style{-1, false}});
    for (std::size_t i = 0; i < scene.tooltip->lines.size(); ++i) {
      out.push_back({Layer::Overlay, "tooltip:" + std::to_string(i),
                     TextShape{{x + kPad, y + kPad + kLine * static_cast<double>(i + 1) - 0.008},
                               scene.tooltip->lines[i]},
                     Style{-1, false}});
    }
  }
  return out;
}

nlohmann::json to_json(const RenderCommand& cmd) {
  nlohmann::json j = {{"layer", layer_name(cmd.layer)}, {"id", cmd.id}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RectShape>) {
          j["shape"] = "rect";
          j["x"] = s.x;
          j["y"] = s.y;
          j["w"] = s.w;
          j["h"] = s.h;
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          j["shape"] = "circle";
          j["cx"] = s.cx;
          j["cy"] = s.cy;
          j["r"] = s.r;
        } else if constexpr (std::is_same_v<T, PolylineShape>) {
          j["shape"] = "polyline";
          auto pts = nlohmann::json::array();
          for (const auto& p : s.points) pts.push_back({p.x, p.y});
          j["points"] = std::move(pts);
        } else {
          j["shape"] = "text";
          j["x"] = s.pos.x;
          j["y"] = s.pos.y;
          j["text"] = s.content;
        }
      },
      cmd.shape);
  j["color"] = cmd.style.color;
  j["emphasis"] = cmd.style.emphasis;
  return j;
}

void append_json(std::string& out, const RenderCommand& cmd) {
  const auto num = [&](std::string_view key, double v) {
    out += key;
    append_json_number(out, v);
  };
  out += "{\"color\":";
  out += std::to_string(cmd.style.color);
  const auto* circle = std::get_if<CircleShape>(&cmd.shape);
  if (circle) {
    num(",\"cx\":", circle->cx);
    num(",\"cy\":", circle->cy);
  }
  out += cmd.style.emphasis ? ",\"emphasis\":true" : ",\"emphasis\":false";
  const auto* rect = std::get_if<RectShape>(&cmd.shape);
  if (rect) num(",\"h\":", rect->h);
  out += ",\"id\":";
  append_json_string(out, cmd.id);
  out += ",\"layer\":\"";
  out += layer_name(cmd.layer);
  out += '"';
  if (const auto* line = std::get_if<PolylineShape>(&cmd.shape)) {
    out += ",\"points\":[";
    for (std::size_t i = 0; i < line->points.size(); ++i) {
      out += i ? ",[" : "[";
      append_json_number(out, line->points[i].x);
      out += ',';
      append_json_number(out, line->points[i].y);
      out += ']';
    }
    out += "],\"shape\":\"polyline\"}";
    return;
  }
  if (circle) {
    num(",\"r\":", circle->r);
    out += ",\"shape\":\"circle\"}";
    return;
  }
  if (rect) {
    out += ",\"shape\":\"rect\"";
    num(",\"w\":", rect->w);
    num(",\"x\":", rect->x);
    num(",\"y\":", rect->y);
    out += '}';
    return;
  }
  const auto& text = std::get<TextShape>(cmd.shape);
  out += ",\"shape\":\"text\",\"text\":";
  append_json_string(out, text.content);
  num(",\"x\":", text.pos.x);
  num(",\"y\":", text.pos.y);
  out += '}';
}

void append_json(std::string& out, const ViewTransform& t) {
  out += "{\"s\":";
  append_json_number(out, t.s);
  out += ",\"tx\":";
  append_json_number(out, t.tx);
  out += ",\"ty\":";
  append_json_number(out, t.ty);
  out += '}';
}

nlohmann::json to_json(const ViewTransform& t) { return {{"s", t.s}, {"tx", t.tx}, {"ty", t.ty}}; }

}  // namespace hanstream
