#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hanstream/gesture.hpp"
#include "hanstream/interaction.hpp"
#include "hanstream/landmarks.hpp"
#include "hanstream/protocol.hpp"
#include "hanstream/scene.hpp"
#include "hanstream/story.hpp"

namespace hanstream {

using ClientId = std::uint64_t;

struct Outbound {
  enum class Target { Sender, Broadcast };
  Target target = Target::Broadcast;
  std::string text;  // one JSON message
};

struct SessionConfig {
  GestureConfig gesture;
  double smoothing_alpha = 0.5;
  std::int64_t reset_after_ms = 500;
  /// Data paths in PlannerUpdate stories resolve against this directory.
  std::filesystem::path story_dir = ".";
};

struct Diagnostics {
  std::int64_t frames_processed = 0;
  std::int64_t frames_dropped = 0;  // out-of-order timestamps
  std::int64_t bad_messages = 0;
  std::int64_t rejected = 0;  // role violations and failed commands
  std::int64_t inconsistent_events = 0;
  std::map<std::string, std::int64_t> gesture_starts;  // by gesture name
};

/// One live presentation: story navigation plus the frame pipeline
/// (mirror, smooth, classify, debounce, interact, render). Not thread-safe;
/// the owner serializes calls.
class Session {
 public:
  using TraceSink = std::function<void(std::int64_t t, const nlohmann::json& msg)>;

  Session(std::string id, StoryScript story, SessionConfig cfg = {});

  const std::string& id() const noexcept { return id_; }

  /// Decodes and handles one message from `from`. Malformed input yields a
  /// single sender-only error.
  std::vector<Outbound> handle_message(ClientId from, std::string_view text);
  std::vector<Outbound> handle(ClientId from, const InboundMessage& msg);

  void disconnect(ClientId client);

  /// Runs the pipeline on an in-order presenter frame and returns the
  /// broadcast SceneState.
  std::string process_frame(const HandFrame& frame);

  /// Latest scene state (does not consume a sequence number).
  std::string scene_state_snapshot() const;
  std::string story_info_snapshot() const;

  /// Every presenter message is passed to the sink before it is handled.
  void set_trace_sink(TraceSink sink) { trace_sink_ = std::move(sink); }

  /// Registers `client` as presenter without a hello (headless replay).
  void attach_presenter(ClientId client);

  std::optional<ClientId> presenter() const noexcept { return presenter_; }
  std::size_t viewer_count() const noexcept;
  const Diagnostics& diagnostics() const noexcept { return diag_; }
  const Scene& scene() const noexcept { return scene_; }
  const InteractionState& interaction() const noexcept { return interaction_; }
  const StoryScript& story() const noexcept { return story_; }
  const StoryState& story_state() const noexcept { return story_state_; }
  const std::string& current_scene_id() const { return story_.scenes[story_state_.current].id; }
  std::uint64_t seq() const noexcept { return seq_; }

 private:
  std::vector<Outbound> handle_control(const NavCommand& cmd);
  std::vector<Outbound> handle_planner(const nlohmann::json& story);
  void enter_scene();
  std::string scene_state_text(std::uint64_t seq) const;
  nlohmann::json story_info_json() const;
  Outbound broadcast(nlohmann::json msg);
  static Outbound error(std::string_view code, std::string detail);
  InteractionConfig interaction_config() const;

  std::string id_;
  StoryScript story_;
  StoryState story_state_;
  SessionConfig cfg_;

  SmootherState smoother_;
  DebounceState debounce_;
  InteractionState interaction_;
  Scene scene_;
  std::optional<std::int64_t> last_timestamp_;
  std::int64_t logical_time_ = 0;
  std::uint64_t seq_ = 0;

  std::optional<ClientId> presenter_;
  std::map<ClientId, ClientRole> clients_;
  Diagnostics diag_;
  TraceSink trace_sink_;
};

/// Per-session inbound buffer. Holding more than `max_frames` landmark
/// frames drops the oldest frame; other messages are never dropped.
class InboundQueue {
 public:
  struct Item {
    ClientId from = 0;
    InboundMessage msg;
  };

  explicit InboundQueue(std::size_t max_frames = 8) : max_frames_(max_frames) {}

  void push(Item item);
  std::optional<Item> pop();
  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  std::deque<Item> items_;
  std::size_t frames_ = 0;
  std::size_t max_frames_;
  std::size_t dropped_ = 0;
};

}  // namespace hanstream
