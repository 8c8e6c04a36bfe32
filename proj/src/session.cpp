#include "hanstream/session.hpp"

#include <algorithm>

#include "hanstream/error.hpp"
#include "hanstream/json_text.hpp"

namespace hanstream {

Session::Session(std::string id, StoryScript story, SessionConfig cfg)
    : id_(std::move(id)), story_(std::move(story)), cfg_(std::move(cfg)) {
  cfg_.gesture.validate();
  smoother_.alpha = cfg_.smoothing_alpha;
  smoother_.reset_after_ms = cfg_.reset_after_ms;
  story_state_ = initial_story_state(story_);
  enter_scene();
}

std::size_t Session::viewer_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(clients_.begin(), clients_.end(), [](const auto& c) { return c.second == ClientRole::Viewer; }));
}

void Session::attach_presenter(ClientId client) {
  presenter_ = client;
  clients_[client] = ClientRole::Presenter;
}

void Session::disconnect(ClientId client) {
  clients_.erase(client);
  if (presenter_ == client) presenter_.reset();
}

Outbound Session::error(std::string_view code, std::string detail) {
  return {Outbound::Target::Sender, wire({{"type", "error"}, {"code", code}, {"detail", std::move(detail)}})};
}

Outbound Session::broadcast(nlohmann::json msg) {
  msg["seq"] = ++seq_;
  return {Outbound::Target::Broadcast, wire(msg)};
}

InteractionConfig Session::interaction_config() const {
  InteractionConfig cfg;
  cfg.enabled = story_.scenes[story_state_.current].gestures;
  return cfg;
}

void Session::enter_scene() {
  scene_ = materialize_scene(story_, story_state_);
  diag_.inconsistent_events += interaction_.inconsistent_events;
  interaction_ = InteractionState{};
  debounce_ = DebounceState{};
}

std::vector<Outbound> Session::handle_message(ClientId from, std::string_view text) {
  InboundMessage msg;
  try {
    msg = parse_inbound(text);
  } catch (const Error& e) {
    ++diag_.bad_messages;
    return {error("bad_message", e.detail())};
  }
  return handle(from, msg);
}

std::vector<Outbound> Session::handle(ClientId from, const InboundMessage& msg) {
  if (const auto* hello = std::get_if<HelloMsg>(&msg)) {
    if (hello->role == ClientRole::Presenter) {
      if (presenter_ && *presenter_ != from) {
        ++diag_.rejected;
        return {error("presenter_taken", "session already has a presenter")};
      }
      attach_presenter(from);
      if (trace_sink_) trace_sink_(logical_time_, to_json(msg));
    } else {
      if (presenter_ == from) presenter_.reset();
      clients_[from] = ClientRole::Viewer;
    }
    nlohmann::json welcome = {{"type", "welcome"},
                              {"session", id_},
                              {"role", role_name(hello->role)},
                              {"story", story_info_json()},
                              {"scene", nlohmann::json::parse(scene_state_text(seq_))}};
    return {{Outbound::Target::Sender, wire(welcome)}};
  }

  const auto client = clients_.find(from);
  if (client == clients_.end()) {
    ++diag_.rejected;
    return {error("no_hello", "send hello first")};
  }
  if (client->second != ClientRole::Presenter) {
    ++diag_.rejected;
    return {error("not_presenter", "viewers are receive-only")};
  }

  if (const auto* frame = std::get_if<FrameMsg>(&msg)) {
    logical_time_ = std::max(logical_time_, frame->frame.timestamp_ms);
    if (trace_sink_) trace_sink_(logical_time_, to_json(msg));
    if (last_timestamp_ && frame->frame.timestamp_ms <= *last_timestamp_) {
      ++diag_.frames_dropped;
      return {};
    }
    return {{Outbound::Target::Broadcast, process_frame(frame->frame)}};
  }
  if (trace_sink_) trace_sink_(logical_time_, to_json(msg));
  if (const auto* control = std::get_if<ControlMsg>(&msg)) return handle_control(control->command);
  return handle_planner(std::get<PlannerUpdateMsg>(msg).story);
}

std::string Session::process_frame(const HandFrame& frame) {
  last_timestamp_ = frame.timestamp_ms;
  logical_time_ = std::max(logical_time_, frame.timestamp_ms);

  const HandFrame view = smooth_frame(smoother_, mirror_frame(frame));
  std::vector<HandGesture> hands;
  hands.reserve(view.hands.size());
  for (const auto& hand : view.hands) hands.push_back(recognize_hand(hand, cfg_.gesture));
  const RawGesture raw = combine_hands(hands);

  const InteractionConfig icfg = interaction_config();
  for (const auto& ev : debounce_step(debounce_, raw, cfg_.gesture, frame.timestamp_ms)) {
    if (ev.phase == GesturePhase::Start) ++diag_.gesture_starts[std::string(gesture_name(ev.kind))];
    if (!icfg.allows(ev.kind)) continue;
    apply_gesture_event(scene_, interaction_, ev, icfg);
  }

  if (scene_.network) {
    auto& net = *scene_.network;
    net.layout = layout_step(std::move(net.layout), net.graph, net.params);
    sync_marks(scene_);
  }
  ++diag_.frames_processed;
  return scene_state_text(++seq_);
}

std::vector<Outbound> Session::handle_control(const NavCommand& cmd) {
  if (cmd.kind == NavCommand::Kind::Goto && !story_.index_of(cmd.scene_id)) {
    ++diag_.rejected;
    return {error("unknown_scene", cmd.scene_id)};
  }
  cancel_mode(scene_, interaction_);
  const auto outcome = navigate(story_state_, story_, cmd, capture_memory(scene_));
  story_state_ = outcome.state;
  if (outcome.plan) enter_scene();

  std::vector<Outbound> out;
  out.push_back(broadcast(story_info_json()));
  if (outcome.plan) {
    const auto& plan = *outcome.plan;
    out.push_back(broadcast({{"type", "transition"},
                             {"from", plan.from},
                             {"to", plan.to},
                             {"kind", plan.transition.kind == TransitionKind::Cut ? "cut" : "fade"},
                             {"duration_ms", plan.transition.duration_ms}}));
  }
  out.push_back({Outbound::Target::Broadcast, scene_state_text(++seq_)});
  return out;
}

std::vector<Outbound> Session::handle_planner(const nlohmann::json& doc) {
  StoryScript next;
  try {
    next = parse_story(wire(doc), cfg_.story_dir);
  } catch (const Error& e) {
    ++diag_.rejected;
    return {error("invalid_story", e.what())};
  }
  const std::string current = current_scene_id();
  story_ = std::move(next);
  story_state_ = initial_story_state(story_);
  story_state_.current = story_.index_of(current).value_or(0);
  enter_scene();
  std::vector<Outbound> out;
  out.push_back(broadcast(story_info_json()));
  out.push_back({Outbound::Target::Broadcast, scene_state_text(++seq_)});
  return out;
}

nlohmann::json Session::story_info_json() const {
  nlohmann::json scenes = nlohmann::json::array();
  for (const auto& def : story_.scenes) {
    nlohmann::json gestures = nlohmann::json::array();
    for (Interaction g : kInteractions) {
      if (def.gestures.contains(g)) gestures.push_back(interaction_name(g));
    }
    scenes.push_back({{"id", def.id}, {"kind", chart_kind(def.chart)}, {"gestures", std::move(gestures)}});
  }
  return {{"type", "story_info"}, {"title", story_.title}, {"scenes", std::move(scenes)},
          {"current", story_state_.current}};
}

std::string Session::scene_state_text(std::uint64_t seq) const {
  const auto commands = render_scene(scene_);
  std::string out;
  out.reserve(64 + commands.size() * 128);
  out += "{\"commands\":[";
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (i) out += ',';
    append_json(out, commands[i]);
  }
  out += "],\"hud\":{\"anchors\":[";
  for (std::size_t i = 0; i < interaction_.hud_anchors.size(); ++i) {
    out += i ? ",[" : "[";
    append_json_number(out, interaction_.hud_anchors[i].x);
    out += ',';
    append_json_number(out, interaction_.hud_anchors[i].y);
    out += ']';
  }
  out += "],\"gesture\":";
  if (interaction_.mode != InteractionMode::Idle) {
    append_json_string(out, gesture_name(interaction_.active_kind));
  } else {
    out += "null";
  }
  out += ",\"mode\":";
  append_json_string(out, mode_name(interaction_.mode));
  out += ",\"time_label\":";
  if (scene_.dimpvis) {
    append_json_string(out, scene_.dimpvis->nav.cursor.label());
  } else {
    out += "null";
  }
  out += "},\"scene_id\":";
  append_json_string(out, current_scene_id());
  out += ",\"seq\":";
  out += std::to_string(seq);
  out += ",\"transform\":";
  append_json(out, scene_.transform);
  out += ",\"type\":\"scene_state\"}";
  return out;
}

std::string Session::scene_state_snapshot() const { return scene_state_text(seq_); }

std::string Session::story_info_snapshot() const { return wire(story_info_json()); }

void InboundQueue::push(Item item) {
  const bool is_frame = std::holds_alternative<FrameMsg>(item.msg);
  items_.push_back(std::move(item));
  if (!is_frame) return;
  ++frames_;
  while (frames_ > max_frames_) {
    auto oldest = std::find_if(items_.begin(), items_.end(),
                               [](const Item& i) { return std::holds_alternative<FrameMsg>(i.msg); });
    items_.erase(oldest);
    --frames_;
    ++dropped_;
  }
}

std::optional<InboundQueue::Item> InboundQueue::pop() {
  if (items_.empty()) return std::nullopt;
  Item item = std::move(items_.front());
  items_.pop_front();
  if (std::holds_alternative<FrameMsg>(item.msg)) --frames_;
  return item;
}

}  // namespace hanstream
