#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hanstream/gesture.hpp"
#include "hanstream/scene.hpp"

namespace hanstream {

/// Story-level gesture names; Pan is performed with a fist.
enum class Interaction : std::uint8_t { Point = 1, Pinch = 2, Pan = 4, Zoom = 8 };

class GestureSet {
 public:
  constexpr GestureSet() = default;
  constexpr GestureSet(std::initializer_list<Interaction> items) {
    for (auto i : items) bits_ |= static_cast<std::uint8_t>(i);
  }
  constexpr bool contains(Interaction i) const noexcept { return bits_ & static_cast<std::uint8_t>(i); }
  constexpr void insert(Interaction i) noexcept { bits_ |= static_cast<std::uint8_t>(i); }
  friend constexpr bool operator==(GestureSet, GestureSet) = default;

  static constexpr GestureSet all() { return {Interaction::Point, Interaction::Pinch, Interaction::Pan, Interaction::Zoom}; }

 private:
  std::uint8_t bits_ = 0;
};

std::string_view interaction_name(Interaction i) noexcept;
inline constexpr std::array<Interaction, 4> kInteractions = {Interaction::Point, Interaction::Pinch, Interaction::Pan,
                                                             Interaction::Zoom};

/// Interaction a recognized gesture drives, if any (open palm drives none).
std::optional<Interaction> interaction_for(GestureKind kind) noexcept;

struct InteractionConfig {
  GestureSet enabled = GestureSet::all();
  double s_min = kScaleMin;
  double s_max = kScaleMax;
  double hit_radius = kHitRadius;

  bool allows(GestureKind kind) const noexcept;
  void validate() const;
};

enum class InteractionMode { Idle, Pointing, DraggingNode, ScrubbingTime, Panning, Zooming };

std::string_view mode_name(InteractionMode m) noexcept;

struct PanAnchor {
  Vec2 anchor;
  Vec2 start_translate;
};

struct ZoomAnchor {
  double d0 = 1.0;
  double s0 = 1.0;
  Vec2 t0;
  Vec2 focal;
};

inline constexpr double kMinZoomPalmDistance = 1e-4;

struct InteractionState {
  InteractionMode mode = InteractionMode::Idle;
  GestureKind active_kind = GestureKind::None;
  std::optional<Handedness> active_hand;
  std::optional<PanAnchor> pan;
  std::optional<ZoomAnchor> zoom;
  std::optional<std::size_t> dragged_node;
  std::vector<Vec2> hud_anchors;  // screen points of the gesture driving the mode

  /// Which (hand slot, kind) streams are currently between Start and End.
  std::array<std::array<bool, 6>, 3> open{};
  int inconsistent_events = 0;
};

/// Keeps the world point rendered at `focal` fixed while changing scale.
ViewTransform zoom_about(const ViewTransform& transform, Vec2 focal, double s_new);

/// translation = start_translate + (current - anchor); scale untouched.
ViewTransform pan_update(const ViewTransform& transform, Vec2 anchor, Vec2 current, Vec2 start_translate);

/// Applies one debounced gesture event to the scene. Zoom pre-empts
/// single-hand modes; otherwise the first Start owns the scene until its End.
void apply_gesture_event(Scene& scene, InteractionState& state, const GestureEvent& ev, const InteractionConfig& cfg);

/// Ends the current mode as if its End had arrived (pins released, pointer
/// highlight cleared, DimpVis time kept).
void cancel_mode(Scene& scene, InteractionState& state);

}  // namespace hanstream
