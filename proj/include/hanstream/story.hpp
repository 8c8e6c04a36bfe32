#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hanstream/chart_spec.hpp"
#include "hanstream/interaction.hpp"
#include "hanstream/scene.hpp"

namespace hanstream {

enum class TransitionKind { Cut, Fade };

struct Transition {
  TransitionKind kind = TransitionKind::Cut;
  std::int64_t duration_ms = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct SceneDef {
  std::string id;
  ChartSpec chart;
  std::string data_path;  // as written in the document
  GestureSet gestures;
  Transition transition;
  ChartData data;  // loaded eagerly at parse time
};

struct StoryScript {
  std::string title;
  std::vector<SceneDef> scenes;

  std::optional<std::size_t> index_of(std::string_view id) const noexcept;
};

/// Default gesture set for a chart: point, pan and zoom, plus pinch where
/// pinch has an effect (network and DimpVis).
GestureSet default_gestures(const ChartSpec& chart) noexcept;

/// Parses and fully validates a story document. Data paths resolve against
/// `base_dir` and every dataset is loaded and checked against its chart.
/// Errors: SchemaError (JSON path), DuplicateId, UnsupportedGesture,
/// MissingData, plus dataset and spec errors.
StoryScript parse_story(std::string_view document, const std::filesystem::path& base_dir);
StoryScript load_story_file(const std::filesystem::path& path);

nlohmann::json to_json(const StoryScript& story);

/// Per-scene state kept while the presenter is on another scene.
struct SceneMemory {
  ViewTransform transform;
  std::optional<double> time;
  std::optional<LayoutState> layout;
};

SceneMemory capture_memory(const Scene& scene);
void restore_memory(Scene& scene, const SceneMemory& memory);

struct StoryState {
  std::size_t current = 0;
  std::vector<std::optional<SceneMemory>> memory;  // one slot per scene
};

StoryState initial_story_state(const StoryScript& story);

struct NavCommand {
  enum class Kind { Next, Prev, Goto } kind = Kind::Next;
  std::string scene_id;  // Goto only
};

struct TransitionPlan {
  std::string from;
  std::string to;
  Transition transition;  // the outgoing scene's transition
};

struct NavOutcome {
  StoryState state;
  std::optional<TransitionPlan> plan;  // empty when the index does not change
};

/// Next/Prev clamp at the ends. `outgoing` is stored as the memory of the
/// scene being left. Throws Error{UnknownScene} for Goto with a bad id.
NavOutcome navigate(const StoryState& state, const StoryScript& story, const NavCommand& cmd,
                    std::optional<SceneMemory> outgoing = std::nullopt);

/// Builds the current scene and restores its memory if any.
Scene materialize_scene(const StoryScript& story, const StoryState& state);

}  // namespace hanstream
