#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "hanstream/session.hpp"
#include "hanstream/story.hpp"

namespace hanstream {

/// One line of a `.jsonl` trace: {"t": <ms>, "msg": <inbound message>}.
struct TraceRecord {
  std::int64_t t = 0;
  nlohmann::json msg;
};

std::string encode_trace_line(const TraceRecord& rec);

/// Throws Error{ReplayError} mentioning `line_no` if the line is not valid
/// JSON, lacks an integer "t", or carries an unknown message.
TraceRecord parse_trace_line(std::string_view line, std::size_t line_no);

/// Reads a whole trace, skipping blank lines. Timestamps must not decrease.
std::vector<TraceRecord> read_trace(std::istream& in);

/// Appends every message it receives as a trace line. Install with
/// session.set_trace_sink(std::ref(recorder)) or a lambda.
class TraceRecorder {
 public:
  explicit TraceRecorder(std::ostream& out) : out_(&out) {}
  void operator()(std::int64_t t, const nlohmann::json& msg);
  std::size_t count() const noexcept { return count_; }

 private:
  std::ostream* out_;
  std::size_t count_ = 0;
};

struct ReplayResult {
  std::vector<std::string> log;  // every outbound message, in order
  std::string final_scene_state;
  std::string final_scene_id;
  Diagnostics diagnostics;
};

/// Client id the replaying presenter uses.
inline constexpr ClientId kReplayPresenter = 1;

/// Feeds the trace through a fresh session with no sleeping. The session id
/// is "default".
ReplayResult replay_trace(const StoryScript& story, const std::vector<TraceRecord>& trace, const SessionConfig& cfg = {});
ReplayResult replay_trace(const StoryScript& story, std::istream& trace, const SessionConfig& cfg = {});

}  // namespace hanstream
