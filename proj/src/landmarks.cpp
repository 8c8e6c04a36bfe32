#include "hanstream/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hanstream/error.hpp"

namespace hanstream {

std::string_view handedness_name(Handedness h) noexcept {
  return h == Handedness::Left ? "Left" : "Right";
}

const HandLandmarks* HandFrame::find(Handedness h) const noexcept {
  for (const auto& hand : hands) {
    if (hand.handedness == h) return &hand;
  }
  return nullptr;
}

HandFrame validate_frame(HandFrame frame) {
  if (frame.hands.size() > 2) {
    throw Error(Errc::InvalidFrame, "more than two hands in frame");
  }
  if (frame.hands.size() == 2 && frame.hands[0].handedness == frame.hands[1].handedness) {
    throw Error(Errc::InvalidFrame, "two hands with handedness " +
                                        std::string(handedness_name(frame.hands[0].handedness)));
  }
  for (auto& hand : frame.hands) {
    if (!std::isfinite(hand.confidence) || hand.confidence < 0.0 || hand.confidence > 1.0) {
      throw Error(Errc::InvalidFrame, "confidence outside [0,1]");
    }
    for (auto& p : hand.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || (p.z && !std::isfinite(*p.z))) {
        throw Error(Errc::InvalidFrame, "non-finite landmark coordinate");
      }
      p.x = std::clamp(p.x, 0.0, 1.0);
      p.y = std::clamp(p.y, 0.0, 1.0);
    }
  }
  return frame;
}

namespace {

double require_number(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw Error(Errc::InvalidFrame, std::string("missing numeric field '") + key + "'");
  }
  return it->get<double>();
}

}  // namespace

HandFrame parse_hand_frame(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidFrame, "frame must be an object");
  HandFrame frame;
  auto ts = j.find("timestamp_ms");
  if (ts == j.end() || !ts->is_number_integer()) {
    throw Error(Errc::InvalidFrame, "missing integer field 'timestamp_ms'");
  }
  frame.timestamp_ms = ts->get<std::int64_t>();

  auto hands = j.find("hands");
  if (hands == j.end() || !hands->is_array()) {
    throw Error(Errc::InvalidFrame, "missing array field 'hands'");
  }
  for (const auto& jh : *hands) {
    if (!jh.is_object()) throw Error(Errc::InvalidFrame, "hand must be an object");
    HandLandmarks hand;
    auto label = jh.find("handedness");
    if (label == jh.end() || !label->is_string()) {
      throw Error(Errc::InvalidFrame, "missing field 'handedness'");
    }
    const auto& name = label->get_ref<const std::string&>();
    if (name == "Left") {
      hand.handedness = Handedness::Left;
    } else if (name == "Right") {
      hand.handedness = Handedness::Right;
    } else {
      throw Error(Errc::InvalidFrame, "unknown handedness '" + name + "'");
    }
    hand.confidence = jh.contains("confidence") ? require_number(jh, "confidence") : 1.0;

    auto pts = jh.find("landmarks");
    if (pts == jh.end() || !pts->is_array() || pts->size() != landmark::kCount) {
      throw Error(Errc::InvalidFrame, "hand must have exactly 21 landmarks");
    }
    for (std::size_t i = 0; i < landmark::kCount; ++i) {
      const auto& jp = (*pts)[i];
      if (!jp.is_object()) throw Error(Errc::InvalidFrame, "landmark must be an object");
      auto& p = hand.points[i];
      p.x = require_number(jp, "x");
      p.y = require_number(jp, "y");
      if (auto z = jp.find("z"); z != jp.end() && !z->is_null()) {
        if (!z->is_number()) throw Error(Errc::InvalidFrame, "landmark z must be numeric");
        p.z = z->get<double>();
      }
    }
    frame.hands.push_back(hand);
  }
  return validate_frame(std::move(frame));
}

nlohmann::json to_json(const HandFrame& frame) {
  nlohmann::json hands = nlohmann::json::array();
  for (const auto& hand : frame.hands) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : hand.points) {
      nlohmann::json jp = {{"x", p.x}, {"y", p.y}};
      if (p.z) jp["z"] = *p.z;
      pts.push_back(std::move(jp));
    }
    hands.push_back({{"handedness", std::string(handedness_name(hand.handedness))},
                     {"confidence", hand.confidence},
                     {"landmarks", std::move(pts)}});
  }
  return {{"timestamp_ms", frame.timestamp_ms}, {"hands", std::move(hands)}};
}

HandFrame mirror_frame(const HandFrame& frame) {
  HandFrame out = frame;
  for (auto& hand : out.hands) {
    hand.handedness = opposite(hand.handedness);
    for (auto& p : hand.points) p.x = 1.0 - p.x;
  }
  return out;
}

namespace {

// Clamped so rounding can never leave the [last, new] interval.
double blend(double next, double last, double alpha) {
  const double v = alpha * next + (1.0 - alpha) * last;
  return std::clamp(v, std::min(next, last), std::max(next, last));
}

}  // namespace

double hand_size(const HandLandmarks& hand) noexcept {
  return distance(hand.at(landmark::kWrist), hand.at(landmark::kMiddleMcp));
}

HandFrame smooth_frame(SmootherState& state, const HandFrame& frame) {
  for (auto& track : state.history) {
    if (track && frame.timestamp_ms - track->last_seen_ms >= state.reset_after_ms) track.reset();
  }

  HandFrame out = frame;
  const double a = state.alpha;
  for (auto& hand : out.hands) {
    auto& track = state.history[slot_of(hand.handedness)];
    if (track) {
      for (std::size_t i = 0; i < landmark::kCount; ++i) {
        auto& p = hand.points[i];
        const auto& last = track->last[i];
        p.x = blend(p.x, last.x, a);
        p.y = blend(p.y, last.y, a);
        if (p.z && last.z) p.z = blend(*p.z, *last.z, a);
      }
    } else {
      track.emplace();
    }
    track->last = hand.points;
    track->last_seen_ms = frame.timestamp_ms;
  }
  return out;
}

}  // namespace hanstream
