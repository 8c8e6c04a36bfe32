#include "hanstream/trace.hpp"

#include "hanstream/error.hpp"
#include "hanstream/protocol.hpp"

namespace hanstream {

std::string encode_trace_line(const TraceRecord& rec) { return wire({{"t", rec.t}, {"msg", rec.msg}}); }

TraceRecord parse_trace_line(std::string_view line, std::size_t line_no) {
  const auto fail = [line_no](const std::string& why) {
    return Error(Errc::ReplayError, "line " + std::to_string(line_no) + ": " + why);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("t") || !j.contains("msg")) throw fail("expected {\"t\": ..., \"msg\": ...}");
  if (!j["t"].is_number_integer()) throw fail("\"t\" must be an integer");
  try {
    parse_inbound(j["msg"]);
  } catch (const Error& e) {
    throw fail(e.detail());
  }
  return {j["t"].get<std::int64_t>(), std::move(j["msg"])};
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    TraceRecord rec = parse_trace_line(line, line_no);
    if (!out.empty() && rec.t < out.back().t) {
      throw Error(Errc::ReplayError, "line " + std::to_string(line_no) + ": timestamp decreases");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void TraceRecorder::operator()(std::int64_t t, const nlohmann::json& msg) {
  *out_ << encode_trace_line({t, msg}) << '\n';
  ++count_;
}

ReplayResult replay_trace(const StoryScript& story, const std::vector<TraceRecord>& trace, const SessionConfig& cfg) {
  Session session("default", story, cfg);
  session.attach_presenter(kReplayPresenter);
  ReplayResult result;
  for (const auto& rec : trace) {
    for (auto& out : session.handle(kReplayPresenter, parse_inbound(rec.msg))) result.log.push_back(std::move(out.text));
  }
  result.final_scene_state = session.scene_state_snapshot();
  result.final_scene_id = session.current_scene_id();
  result.diagnostics = session.diagnostics();
  result.diagnostics.inconsistent_events += session.interaction().inconsistent_events;
  return result;
}

ReplayResult replay_trace(const StoryScript& story, std::istream& trace, const SessionConfig& cfg) {
  return replay_trace(story, read_trace(trace), cfg);
}

}  // namespace hanstream
