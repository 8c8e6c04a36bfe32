#include "hanstream/interaction.hpp"

#include <algorithm>

#include "hanstream/error.hpp"

namespace hanstream {

std::string_view interaction_name(Interaction i) noexcept {
  switch (i) {
    case Interaction::Point: return "point";
    case Interaction::Pinch: return "pinch";
    case Interaction::Pan: return "pan";
    case Interaction::Zoom: return "zoom";
  }
  return "?";
}

std::optional<Interaction> interaction_for(GestureKind kind) noexcept {
  switch (kind) {
    case GestureKind::Point: return Interaction::Point;
    case GestureKind::Pinch: return Interaction::Pinch;
    case GestureKind::Fist: return Interaction::Pan;
    case GestureKind::Zoom: return Interaction::Zoom;
    default: return std::nullopt;
  }
}

bool InteractionConfig::allows(GestureKind kind) const noexcept {
  const auto i = interaction_for(kind);
  return i && enabled.contains(*i);
}

void InteractionConfig::validate() const {
  if (!(s_min > 0.0 && s_min < s_max)) throw Error(Errc::InvalidConfig, "zoom clamps need 0 < s_min < s_max");
  if (!(hit_radius >= 0.0)) throw Error(Errc::InvalidConfig, "hit_radius must be >= 0");
}

std::string_view mode_name(InteractionMode m) noexcept {
  switch (m) {
    case InteractionMode::Idle: return "idle";
    case InteractionMode::Pointing: return "pointing";
    case InteractionMode::DraggingNode: return "dragging_node";
    case InteractionMode::ScrubbingTime: return "scrubbing_time";
    case InteractionMode::Panning: return "panning";
    case InteractionMode::Zooming: return "zooming";
  }
  return "?";
}

ViewTransform zoom_about(const ViewTransform& transform, Vec2 focal, double s_new) {
  const Vec2 world = transform.to_world(focal);
  return {s_new, focal.x - s_new * world.x, focal.y - s_new * world.y};
}

ViewTransform pan_update(const ViewTransform& transform, Vec2 anchor, Vec2 current, Vec2 start_translate) {
  const Vec2 t = start_translate + (current - anchor);
  return {transform.s, t.x, t.y};
}

namespace {

std::size_t stream_slot(const GestureEvent& ev) {
  return ev.hand ? slot_of(*ev.hand) : DebounceState::kZoomTrack;
}

void point_at(Scene& scene, Vec2 screen, const InteractionConfig& cfg) {
  set_highlight(scene, hit_test_index(scene, screen, cfg.hit_radius));
}

void enter(InteractionState& state, InteractionMode mode, const GestureEvent& ev) {
  state.mode = mode;
  state.active_kind = ev.kind;
  state.active_hand = ev.hand;
}

void start_single_hand(Scene& scene, InteractionState& state, const GestureEvent& ev, const InteractionConfig& cfg) {
  switch (ev.kind) {
    case GestureKind::Point:
      enter(state, InteractionMode::Pointing, ev);
      point_at(scene, ev.anchor, cfg);
      break;
    case GestureKind::Pinch: {
      const auto hit = hit_test_index(scene, ev.anchor, cfg.hit_radius);
      if (!hit || !scene.marks[*hit].item) return;
      const std::size_t item = *scene.marks[*hit].item;
      if (scene.network) {
        enter(state, InteractionMode::DraggingNode, ev);
        state.dragged_node = item;
        auto& net = *scene.network;
        net.layout = drag_node(std::move(net.layout), item, scene.transform.to_world(ev.anchor));
        sync_marks(scene);
      } else if (scene.dimpvis) {
        enter(state, InteractionMode::ScrubbingTime, ev);
        scene.dimpvis->nav.grabbed = item;
        sync_marks(scene);
      }
      break;
    }
    case GestureKind::Fist:
      enter(state, InteractionMode::Panning, ev);
      state.pan = PanAnchor{ev.anchor, scene.transform.translation()};
      break;
    default:
      return;
  }
  if (state.mode != InteractionMode::Idle) state.hud_anchors = {ev.anchor};
}

void update_single_hand(Scene& scene, InteractionState& state, const GestureEvent& ev, const InteractionConfig& cfg) {
  switch (state.mode) {
    case InteractionMode::Pointing:
      point_at(scene, ev.anchor, cfg);
      break;
    case InteractionMode::DraggingNode: {
      auto& net = *scene.network;
      net.layout = drag_node(std::move(net.layout), *state.dragged_node, scene.transform.to_world(ev.anchor));
      sync_marks(scene);
      break;
    }
    case InteractionMode::ScrubbingTime: {
      auto& dv = *scene.dimpvis;
      const auto& traj = dv.set.trajectories[*dv.nav.grabbed];
      dv.nav.cursor.t = project_drag(traj, scene.transform.to_world(ev.anchor), dv.nav.cursor.t, dv.nav.window);
      sync_marks(scene);
      break;
    }
    case InteractionMode::Panning:
      scene.transform = pan_update(scene.transform, state.pan->anchor, ev.anchor, state.pan->start_translate);
      break;
    default:
      return;
  }
  state.hud_anchors = {ev.anchor};
}

}  // namespace

void cancel_mode(Scene& scene, InteractionState& state) {
  switch (state.mode) {
    case InteractionMode::Pointing:
      set_highlight(scene, std::nullopt);
      break;
    case InteractionMode::DraggingNode:
      if (scene.network && state.dragged_node) {
        scene.network->layout = release_node(std::move(scene.network->layout), *state.dragged_node);
      }
      break;
    case InteractionMode::ScrubbingTime:
      if (scene.dimpvis) {
        scene.dimpvis->nav.grabbed.reset();
        sync_marks(scene);
      }
      break;
    default:
      break;
  }
  state.mode = InteractionMode::Idle;
  state.active_kind = GestureKind::None;
  state.active_hand.reset();
  state.pan.reset();
  state.zoom.reset();
  state.dragged_node.reset();
  state.hud_anchors.clear();
}

void apply_gesture_event(Scene& scene, InteractionState& state, const GestureEvent& ev, const InteractionConfig& cfg) {
  const auto kind_index = static_cast<std::size_t>(ev.kind);
  bool& open = state.open[stream_slot(ev)][kind_index];
  switch (ev.phase) {
    case GesturePhase::Start:
      if (open) {
        ++state.inconsistent_events;
        return;
      }
      open = true;
      break;
    case GesturePhase::Update:
    case GesturePhase::End:
      if (!open) {
        ++state.inconsistent_events;
        return;
      }
      if (ev.phase == GesturePhase::End) open = false;
      break;
  }

  if (ev.kind == GestureKind::Zoom) {
    if (!ev.zoom) return;
    switch (ev.phase) {
      case GesturePhase::Start: {
        const double d0 = distance(ev.zoom->left_palm, ev.zoom->right_palm);
        if (d0 < kMinZoomPalmDistance) return;
        cancel_mode(scene, state);
        enter(state, InteractionMode::Zooming, ev);
        state.zoom = ZoomAnchor{d0, scene.transform.s, scene.transform.translation(),
                                midpoint(ev.zoom->left_palm, ev.zoom->right_palm)};
        state.hud_anchors = {ev.zoom->left_palm, ev.zoom->right_palm};
        break;
      }
      case GesturePhase::Update: {
        if (state.mode != InteractionMode::Zooming) return;
        const auto& z = *state.zoom;
        const double d = distance(ev.zoom->left_palm, ev.zoom->right_palm);
        const double s = std::clamp(z.s0 * d / z.d0, cfg.s_min, cfg.s_max);
        scene.transform = zoom_about(ViewTransform{z.s0, z.t0.x, z.t0.y}, z.focal, s);
        state.hud_anchors = {ev.zoom->left_palm, ev.zoom->right_palm};
        break;
      }
      case GesturePhase::End:
        if (state.mode == InteractionMode::Zooming) cancel_mode(scene, state);
        break;
    }
    return;
  }

  const bool owns = state.mode != InteractionMode::Idle && state.active_kind == ev.kind && state.active_hand == ev.hand;
  switch (ev.phase) {
    case GesturePhase::Start:
      if (state.mode == InteractionMode::Idle) start_single_hand(scene, state, ev, cfg);
      break;
    case GesturePhase::Update:
      if (owns) update_single_hand(scene, state, ev, cfg);
      break;
    case GesturePhase::End:
      if (owns) cancel_mode(scene, state);
      break;
  }
}

}  // namespace hanstream
