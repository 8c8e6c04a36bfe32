#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hanstream/geometry.hpp"
#include "hanstream/landmarks.hpp"

namespace hanstream {

/// Ordered by straightness: NoCurl > HalfCurl > FullCurl.
enum class CurlClass { FullCurl, HalfCurl, NoCurl };

enum class Finger { Thumb, Index, Middle, Ring, Pinky };
inline constexpr std::array<Finger, 5> kFingers = {Finger::Thumb, Finger::Index, Finger::Middle,
                                                   Finger::Ring, Finger::Pinky};

std::string_view finger_name(Finger f) noexcept;
std::string_view curl_name(CurlClass c) noexcept;

struct FingerCurl {
  double angle_deg = 180.0;
  CurlClass curl = CurlClass::NoCurl;
};

struct CurlProfile {
  std::array<FingerCurl, 5> fingers{};

  const FingerCurl& operator[](Finger f) const noexcept { return fingers[static_cast<std::size_t>(f)]; }
  FingerCurl& operator[](Finger f) noexcept { return fingers[static_cast<std::size_t>(f)]; }
};

enum class GestureKind { None, Point, Pinch, Fist, OpenPalm, Zoom };

std::string_view gesture_name(GestureKind k) noexcept;

struct GestureConfig {
  double no_curl_min_deg = 130.0;
  double full_curl_max_deg = 60.0;
  double pinch_ratio = 0.25;  // of hand_size
  int activation_frames = 3;
  int release_frames = 2;

  /// Throws Error{InvalidConfig} when the invariants do not hold.
  void validate() const;
};

/// Interior angle at `mid` by the law of cosines, in degrees within [0,180].
/// Throws Error{DegenerateFinger} if any two points coincide.
double curl_angle(Vec2 start, Vec2 mid, Vec2 end);

CurlClass classify_curl(double angle_deg, const GestureConfig& cfg) noexcept;

/// Landmark triples (base, joint, tip) whose angle measures each finger.
std::array<int, 3> finger_triple(Finger f) noexcept;

CurlProfile curl_profile(const HandLandmarks& hand, const GestureConfig& cfg);

/// Mean of wrist and the four finger MCPs.
Vec2 palm_centroid(const HandLandmarks& hand) noexcept;

struct HandGesture {
  Handedness hand = Handedness::Right;
  GestureKind kind = GestureKind::None;
  Vec2 anchor;
  std::optional<CurlProfile> profile;  // empty when a finger was degenerate
};

/// Rule precedence Pinch > Point > Fist > OpenPalm, else None.
HandGesture classify_hand(const HandLandmarks& hand, const CurlProfile& profile, const GestureConfig& cfg);

/// curl_profile + classify_hand; a degenerate finger yields kind None.
HandGesture recognize_hand(const HandLandmarks& hand, const GestureConfig& cfg);

struct ZoomCandidate {
  Vec2 left_palm;
  Vec2 right_palm;
};

struct RawGesture {
  std::vector<HandGesture> hands;  // Left before Right
  std::optional<ZoomCandidate> two_hand;

  const HandGesture* find(Handedness h) const noexcept;
};

RawGesture combine_hands(std::span<const HandGesture> hands);

enum class GesturePhase { Start, Update, End };

std::string_view phase_name(GesturePhase p) noexcept;

struct GestureEvent {
  GesturePhase phase = GesturePhase::Start;
  GestureKind kind = GestureKind::None;
  std::optional<Handedness> hand;  // empty for Zoom
  Vec2 anchor;                     // index tip, pinch centroid or palm centroid; palm midpoint for Zoom
  std::optional<ZoomCandidate> zoom;
  std::int64_t timestamp_ms = 0;
};

struct DebounceState {
  struct Track {
    GestureKind active = GestureKind::None;
    GestureKind pending = GestureKind::None;
    int streak = 0;
    int misses = 0;
    Vec2 last_anchor;
    std::optional<ZoomCandidate> last_zoom;
  };
  static constexpr std::size_t kZoomTrack = 2;
  std::array<Track, 3> tracks;  // Left, Right, Zoom
};

/// Turns one frame of raw classifications into Start/Update/End events.
/// Zoom is tracked separately; while it is active the per-hand tracks are
/// ended and held idle.
std::vector<GestureEvent> debounce_step(DebounceState& state, const RawGesture& raw, const GestureConfig& cfg,
                                        std::int64_t timestamp_ms);

}  // namespace hanstream
