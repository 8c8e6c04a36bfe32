#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "hanstream/landmarks.hpp"
#include "hanstream/story.hpp"

namespace hanstream {

enum class ClientRole { Presenter, Viewer };

std::string_view role_name(ClientRole r) noexcept;

struct HelloMsg {
  ClientRole role = ClientRole::Viewer;
  std::optional<std::string> session;
};

struct FrameMsg {
  HandFrame frame;
};

struct ControlMsg {
  NavCommand command;
};

struct PlannerUpdateMsg {
  nlohmann::json story;
};

using InboundMessage = std::variant<HelloMsg, FrameMsg, ControlMsg, PlannerUpdateMsg>;

/// Decodes one inbound message. Throws Error{ParseError} for anything that
/// is not a well-formed message of a known type.
InboundMessage parse_inbound(std::string_view text);
InboundMessage parse_inbound(const nlohmann::json& j);
inline InboundMessage parse_inbound(const char* text) { return parse_inbound(std::string_view(text)); }
inline InboundMessage parse_inbound(const std::string& text) { return parse_inbound(std::string_view(text)); }

nlohmann::json to_json(const InboundMessage& msg);

/// Canonical wire text of a JSON value (compact, deterministic).
std::string wire(const nlohmann::json& j);

}  // namespace hanstream
