#include "hanstream/story.hpp"

#include <set>

#include "hanstream/error.hpp"

namespace hanstream {

std::optional<std::size_t> StoryScript::index_of(std::string_view id) const noexcept {
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (scenes[i].id == id) return i;
  }
  return std::nullopt;
}

GestureSet default_gestures(const ChartSpec& chart) noexcept {
  GestureSet set{Interaction::Point, Interaction::Pan, Interaction::Zoom};
  if (std::holds_alternative<NetworkSpec>(chart) || std::holds_alternative<DimpVisSpec>(chart)) {
    set.insert(Interaction::Pinch);
  }
  return set;
}

namespace {

using json = nlohmann::json;

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::SchemaError, path + "." + key);
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string() || v.get_ref<const std::string&>().empty()) throw Error(Errc::SchemaError, path + "." + key);
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(Errc::SchemaError, path + "." + key);
  return it->get<std::string>();
}

ChartSpec parse_chart(const json& chart, const std::string& path) {
  if (!chart.is_object()) throw Error(Errc::SchemaError, path);
  const json& kind = member(chart, "kind", path);
  const std::string name = kind.is_string() ? kind.get<std::string>() : "";
  if (name == "bar") {
    return BarSpec{string_member(chart, "category_field", path), string_member(chart, "value_field", path)};
  }
  if (name == "multiline") {
    return MultiLineSpec{string_member(chart, "x_field", path), string_member(chart, "y_field", path),
                         string_member(chart, "series_field", path)};
  }
  if (name == "network") {
    NetworkSpec spec;
    if (auto s = optional_string(chart, "nodes_source", path)) spec.nodes_source = *s;
    if (auto s = optional_string(chart, "links_source", path)) spec.links_source = *s;
    return spec;
  }
  if (name == "dimpvis") {
    return DimpVisSpec{string_member(chart, "entity_field", path), string_member(chart, "time_field", path),
                       string_member(chart, "x_field", path), string_member(chart, "y_field", path),
                       optional_string(chart, "size_field", path)};
  }
  throw Error(Errc::SchemaError, path + ".kind");
}

GestureSet parse_gestures(const json& list, const std::string& path) {
  if (!list.is_array()) throw Error(Errc::SchemaError, path);
  GestureSet set;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    if (!list[i].is_string()) throw Error(Errc::SchemaError, item_path);
    const auto& name = list[i].get_ref<const std::string&>();
    bool found = false;
    for (Interaction g : kInteractions) {
      if (name == interaction_name(g)) {
        set.insert(g);
        found = true;
      }
    }
    if (!found) throw Error(Errc::SchemaError, item_path);
  }
  return set;
}

Transition parse_transition(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw Error(Errc::SchemaError, path);
  Transition t;
  if (auto k = obj.find("kind"); k != obj.end()) {
    if (*k == "cut") {
      t.kind = TransitionKind::Cut;
    } else if (*k == "fade") {
      t.kind = TransitionKind::Fade;
    } else {
      throw Error(Errc::SchemaError, path + ".kind");
    }
  }
  if (auto d = obj.find("duration_ms"); d != obj.end()) {
    if (!d->is_number_integer() || d->get<std::int64_t>() < 0) throw Error(Errc::SchemaError, path + ".duration_ms");
    t.duration_ms = d->get<std::int64_t>();
  }
  return t;
}

ChartData load_chart_data(const ChartSpec& chart, const std::filesystem::path& file) {
  if (!std::filesystem::is_regular_file(file)) throw Error(Errc::MissingData, file.string());
  if (const auto* net = std::get_if<NetworkSpec>(&chart)) {
    return parse_graph(read_file(file), net->nodes_source, net->links_source);
  }
  std::optional<std::string> time_field;
  if (const auto* dv = std::get_if<DimpVisSpec>(&chart)) time_field = dv->time_field;
  return load_dataset_file(file, time_field);
}

json chart_to_json(const ChartSpec& chart) {
  json j = {{"kind", chart_kind(chart)}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BarSpec>) {
          j["category_field"] = s.category_field;
          j["value_field"] = s.value_field;
        } else if constexpr (std::is_same_v<T, MultiLineSpec>) {
          j["x_field"] = s.x_field;
          j["y_field"] = s.y_field;
          j["series_field"] = s.series_field;
        } else if constexpr (std::is_same_v<T, NetworkSpec>) {
          j["nodes_source"] = s.nodes_source;
          j["links_source"] = s.links_source;
        } else {
          j["entity_field"] = s.entity_field;
          j["time_field"] = s.time_field;
          j["x_field"] = s.x_field;
          j["y_field"] = s.y_field;
          if (s.size_field) j["size_field"] = *s.size_field;
        }
      },
      chart);
  return j;
}

}  // namespace

StoryScript parse_story(std::string_view document, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, std::string("$: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::SchemaError, "$");

  StoryScript story;
  if (auto t = optional_string(doc, "title", "$")) story.title = *t;
  const json& scenes = member(doc, "scenes", "$");
  if (!scenes.is_array() || scenes.empty()) throw Error(Errc::SchemaError, "$.scenes");

  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const std::string path = "$.scenes[" + std::to_string(i) + "]";
    const json& js = scenes[i];
    if (!js.is_object()) throw Error(Errc::SchemaError, path);
    SceneDef def;
    def.id = string_member(js, "id", path);
    def.chart = parse_chart(member(js, "chart", path), path + ".chart");
    def.data_path = string_member(js, "data", path);
    def.gestures = js.contains("gestures") ? parse_gestures(js["gestures"], path + ".gestures")
                                           : default_gestures(def.chart);
    if (auto tr = js.find("transition"); tr != js.end()) def.transition = parse_transition(*tr, path + ".transition");
    story.scenes.push_back(std::move(def));
  }

  std::set<std::string> ids;
  for (const auto& def : story.scenes) {
    if (!ids.insert(def.id).second) throw Error(Errc::DuplicateId, def.id);
  }
  for (const auto& def : story.scenes) {
    const bool pinchable =
        std::holds_alternative<NetworkSpec>(def.chart) || std::holds_alternative<DimpVisSpec>(def.chart);
    if (def.gestures.contains(Interaction::Pinch) && !pinchable) throw Error(Errc::UnsupportedGesture, def.id);
  }
  for (auto& def : story.scenes) {
    def.data = load_chart_data(def.chart, base_dir / def.data_path);
    validate_spec(def.chart, def.data);
  }
  return story;
}

StoryScript load_story_file(const std::filesystem::path& path) {
  return parse_story(read_file(path), path.parent_path());
}

json to_json(const StoryScript& story) {
  json scenes = json::array();
  for (const auto& def : story.scenes) {
    json gestures = json::array();
    for (Interaction g : kInteractions) {
      if (def.gestures.contains(g)) gestures.push_back(interaction_name(g));
    }
    scenes.push_back({{"id", def.id},
                      {"chart", chart_to_json(def.chart)},
                      {"data", def.data_path},
                      {"gestures", std::move(gestures)},
                      {"transition",
                       {{"kind", def.transition.kind == TransitionKind::Cut ? "cut" : "fade"},
                        {"duration_ms", def.transition.duration_ms}}}});
  }
  return {{"title", story.title}, {"scenes", std::move(scenes)}};
}

SceneMemory capture_memory(const Scene& scene) {
  SceneMemory m{scene.transform, std::nullopt, std::nullopt};
  if (scene.dimpvis) m.time = scene.dimpvis->nav.cursor.t;
  if (scene.network) m.layout = scene.network->layout;
  return m;
}

void restore_memory(Scene& scene, const SceneMemory& memory) {
  scene.transform = memory.transform;
  if (scene.dimpvis && memory.time) scene.dimpvis->nav.cursor.t = *memory.time;
  if (scene.network && memory.layout) scene.network->layout = *memory.layout;
  sync_marks(scene);
}

StoryState initial_story_state(const StoryScript& story) {
  return StoryState{0, std::vector<std::optional<SceneMemory>>(story.scenes.size())};
}

NavOutcome navigate(const StoryState& state, const StoryScript& story, const NavCommand& cmd,
                    std::optional<SceneMemory> outgoing) {
  NavOutcome out{state, std::nullopt};
  out.state.memory.resize(story.scenes.size());
  std::size_t target = state.current;
  switch (cmd.kind) {
    case NavCommand::Kind::Next:
      if (target + 1 < story.scenes.size()) ++target;
      break;
    case NavCommand::Kind::Prev:
      if (target > 0) --target;
      break;
    case NavCommand::Kind::Goto: {
      const auto idx = story.index_of(cmd.scene_id);
      if (!idx) throw Error(Errc::UnknownScene, cmd.scene_id);
      target = *idx;
      break;
    }
  }
  if (target == state.current) return out;
  if (outgoing) out.state.memory[state.current] = std::move(outgoing);
  out.plan = TransitionPlan{story.scenes[state.current].id, story.scenes[target].id,
                            story.scenes[state.current].transition};
  out.state.current = target;
  return out;
}

Scene materialize_scene(const StoryScript& story, const StoryState& state) {
  const SceneDef& def = story.scenes.at(state.current);
  Scene scene = build_scene(def.chart, def.data);
  if (state.current < state.memory.size() && state.memory[state.current]) {
    restore_memory(scene, *state.memory[state.current]);
  }
  return scene;
}

}  // namespace hanstream
