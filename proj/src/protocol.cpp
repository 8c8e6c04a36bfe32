#include "hanstream/protocol.hpp"

#include "hanstream/error.hpp"

namespace hanstream {

std::string_view role_name(ClientRole r) noexcept { return r == ClientRole::Presenter ? "presenter" : "viewer"; }

InboundMessage parse_inbound(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return parse_inbound(j);
}

InboundMessage parse_inbound(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "message must be a JSON object");
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string()) throw Error(Errc::ParseError, "message needs a string 'type'");
  const auto& name = type->get_ref<const std::string&>();

  if (name == "hello") {
    HelloMsg hello;
    const auto role = j.find("role");
    if (role == j.end() || !role->is_string()) throw Error(Errc::ParseError, "hello needs a role");
    if (*role == "presenter") {
      hello.role = ClientRole::Presenter;
    } else if (*role == "viewer") {
      hello.role = ClientRole::Viewer;
    } else {
      throw Error(Errc::ParseError, "unknown role");
    }
    if (auto s = j.find("session"); s != j.end() && !s->is_null()) {
      if (!s->is_string()) throw Error(Errc::ParseError, "session must be a string");
      hello.session = s->get<std::string>();
    }
    return hello;
  }
  if (name == "frame") {
    const auto frame = j.find("frame");
    if (frame == j.end()) throw Error(Errc::ParseError, "frame message needs 'frame'");
    try {
      return FrameMsg{parse_hand_frame(*frame)};
    } catch (const Error& e) {
      throw Error(Errc::ParseError, e.what());
    }
  }
  if (name == "control") {
    const auto cmd = j.find("command");
    if (cmd == j.end() || !cmd->is_string()) throw Error(Errc::ParseError, "control needs a command");
    ControlMsg msg;
    if (*cmd == "next") {
      msg.command.kind = NavCommand::Kind::Next;
    } else if (*cmd == "prev") {
      msg.command.kind = NavCommand::Kind::Prev;
    } else if (*cmd == "goto") {
      msg.command.kind = NavCommand::Kind::Goto;
      const auto scene = j.find("scene");
      if (scene == j.end() || !scene->is_string()) throw Error(Errc::ParseError, "goto needs a scene id");
      msg.command.scene_id = scene->get<std::string>();
    } else {
      throw Error(Errc::ParseError, "unknown control command");
    }
    return msg;
  }
  if (name == "planner_update") {
    const auto story = j.find("story");
    if (story == j.end() || !story->is_object()) throw Error(Errc::ParseError, "planner_update needs a story object");
    return PlannerUpdateMsg{*story};
  }
  throw Error(Errc::ParseError, "unknown message type '" + name + "'");
}

nlohmann::json to_json(const InboundMessage& msg) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HelloMsg>) {
          nlohmann::json j = {{"type", "hello"}, {"role", role_name(m.role)}};
          if (m.session) j["session"] = *m.session;
          return j;
        } else if constexpr (std::is_same_v<T, FrameMsg>) {
          return {{"type", "frame"}, {"frame", to_json(m.frame)}};
        } else if constexpr (std::is_same_v<T, ControlMsg>) {
          switch (m.command.kind) {
            case NavCommand::Kind::Next: return {{"type", "control"}, {"command", "next"}};
            case NavCommand::Kind::Prev: return {{"type", "control"}, {"command", "prev"}};
            case NavCommand::Kind::Goto:
              return {{"type", "control"}, {"command", "goto"}, {"scene", m.command.scene_id}};
          }
          return {};
        } else {
          return {{"type", "planner_update"}, {"story", m.story}};
        }
      },
      msg);
}

std::string wire(const nlohmann::json& j) { return j.dump(); }

}  // namespace hanstream
