#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hanstream/geometry.hpp"

namespace hanstream {

/// Landmark indices of the standard 21-point hand topology.
namespace landmark {
inline constexpr int kWrist = 0;
inline constexpr int kThumbCmc = 1;
inline constexpr int kThumbMcp = 2;
inline constexpr int kThumbIp = 3;
inline constexpr int kThumbTip = 4;
inline constexpr int kIndexMcp = 5;
inline constexpr int kIndexPip = 6;
inline constexpr int kIndexDip = 7;
inline constexpr int kIndexTip = 8;
inline constexpr int kMiddleMcp = 9;
inline constexpr int kMiddlePip = 10;
inline constexpr int kMiddleDip = 11;
inline constexpr int kMiddleTip = 12;
inline constexpr int kRingMcp = 13;
inline constexpr int kRingPip = 14;
inline constexpr int kRingDip = 15;
inline constexpr int kRingTip = 16;
inline constexpr int kPinkyMcp = 17;
inline constexpr int kPinkyPip = 18;
inline constexpr int kPinkyDip = 19;
inline constexpr int kPinkyTip = 20;
inline constexpr int kCount = 21;
}  // namespace landmark

enum class Handedness { Left, Right };

std::string_view handedness_name(Handedness h) noexcept;
constexpr Handedness opposite(Handedness h) noexcept {
  return h == Handedness::Left ? Handedness::Right : Handedness::Left;
}
constexpr std::size_t slot_of(Handedness h) noexcept { return h == Handedness::Left ? 0 : 1; }

/// Normalized viewport coordinate, top-left origin. z is relative depth and
/// is carried through but never used for classification.
struct Landmark {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> z;

  Vec2 xy() const noexcept { return {x, y}; }
  friend bool operator==(const Landmark&, const Landmark&) = default;
};

struct HandLandmarks {
  Handedness handedness = Handedness::Right;
  std::array<Landmark, landmark::kCount> points{};
  double confidence = 1.0;

  Vec2 at(int index) const noexcept { return points[static_cast<std::size_t>(index)].xy(); }
  friend bool operator==(const HandLandmarks&, const HandLandmarks&) = default;
};

struct HandFrame {
  std::int64_t timestamp_ms = 0;
  std::vector<HandLandmarks> hands;

  const HandLandmarks* find(Handedness h) const noexcept;
  friend bool operator==(const HandFrame&, const HandFrame&) = default;
};

/// Checks the frame invariants and clamps coordinates into [0,1].
/// Throws Error{InvalidFrame} on non-finite coordinates, out-of-range
/// confidence, more than two hands, or a repeated handedness.
HandFrame validate_frame(HandFrame frame);

/// Parses the landmark JSON shape and validates it.
HandFrame parse_hand_frame(const nlohmann::json& j);
nlohmann::json to_json(const HandFrame& frame);

/// Selfie-view mapping: x -> 1 - x and Left <-> Right.
HandFrame mirror_frame(const HandFrame& frame);

/// Wrist to middle-finger MCP distance. Zero when the two coincide.
double hand_size(const HandLandmarks& hand) noexcept;

struct SmootherState {
  double alpha = 0.5;
  std::int64_t reset_after_ms = 500;

  struct Track {
    std::array<Landmark, landmark::kCount> last{};
    std::int64_t last_seen_ms = 0;
  };
  std::array<std::optional<Track>, 2> history;  // indexed by slot_of(handedness)
};

/// Exponential smoothing per (handedness, landmark). Hands without history
/// pass through and seed it; history older than reset_after_ms is dropped.
HandFrame smooth_frame(SmootherState& state, const HandFrame& frame);

}  // namespace hanstream
