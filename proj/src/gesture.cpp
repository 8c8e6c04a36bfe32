#include "hanstream/gesture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hanstream/error.hpp"

namespace hanstream {

std::string_view finger_name(Finger f) noexcept {
  switch (f) {
    case Finger::Thumb: return "thumb";
    case Finger::Index: return "index";
    case Finger::Middle: return "middle";
    case Finger::Ring: return "ring";
    case Finger::Pinky: return "pinky";
  }
  return "?";
}

std::string_view curl_name(CurlClass c) noexcept {
  switch (c) {
    case CurlClass::NoCurl: return "no_curl";
    case CurlClass::HalfCurl: return "half_curl";
    case CurlClass::FullCurl: return "full_curl";
  }
  return "?";
}

std::string_view gesture_name(GestureKind k) noexcept {
  switch (k) {
    case GestureKind::None: return "none";
    case GestureKind::Point: return "point";
    case GestureKind::Pinch: return "pinch";
    case GestureKind::Fist: return "fist";
    case GestureKind::OpenPalm: return "open_palm";
    case GestureKind::Zoom: return "zoom";
  }
  return "?";
}

std::string_view phase_name(GesturePhase p) noexcept {
  switch (p) {
    case GesturePhase::Start: return "start";
    case GesturePhase::Update: return "update";
    case GesturePhase::End: return "end";
  }
  return "?";
}

void GestureConfig::validate() const {
  if (!(full_curl_max_deg > 0.0 && full_curl_max_deg < no_curl_min_deg && no_curl_min_deg <= 180.0)) {
    throw Error(Errc::InvalidConfig, "curl thresholds must satisfy 0 < full_curl_max < no_curl_min <= 180");
  }
  if (!(pinch_ratio > 0.0)) throw Error(Errc::InvalidConfig, "pinch_ratio must be positive");
  if (activation_frames < 1 || release_frames < 1) {
    throw Error(Errc::InvalidConfig, "activation_frames and release_frames must be >= 1");
  }
}

double curl_angle(Vec2 start, Vec2 mid, Vec2 end) {
  const double p = distance(start, mid);
  const double q = distance(mid, end);
  const double r = distance(start, end);
  if (p == 0.0 || q == 0.0 || r == 0.0) {
    throw Error(Errc::DegenerateFinger, "coincident finger landmarks");
  }
  const double cosine = std::clamp((p * p + q * q - r * r) / (2.0 * p * q), -1.0, 1.0);
  return std::acos(cosine) * (180.0 / std::numbers::pi);
}

CurlClass classify_curl(double angle_deg, const GestureConfig& cfg) noexcept {
  if (angle_deg >= cfg.no_curl_min_deg) return CurlClass::NoCurl;
  if (angle_deg < cfg.full_curl_max_deg) return CurlClass::FullCurl;
  return CurlClass::HalfCurl;
}

std::array<int, 3> finger_triple(Finger f) noexcept {
  using namespace landmark;
  switch (f) {
    case Finger::Thumb: return {kThumbCmc, kThumbMcp, kThumbTip};
    case Finger::Index: return {kIndexMcp, kIndexPip, kIndexTip};
    case Finger::Middle: return {kMiddleMcp, kMiddlePip, kMiddleTip};
    case Finger::Ring: return {kRingMcp, kRingPip, kRingTip};
    case Finger::Pinky: return {kPinkyMcp, kPinkyPip, kPinkyTip};
  }
  return {0, 0, 0};
}

CurlProfile curl_profile(const HandLandmarks& hand, const GestureConfig& cfg) {
  CurlProfile profile;
  for (Finger f : kFingers) {
    const auto [a, b, c] = finger_triple(f);
    const double angle = curl_angle(hand.at(a), hand.at(b), hand.at(c));
    profile[f] = {angle, classify_curl(angle, cfg)};
  }
  return profile;
}

Vec2 palm_centroid(const HandLandmarks& hand) noexcept {
  using namespace landmark;
  Vec2 sum;
  for (int i : {kWrist, kIndexMcp, kMiddleMcp, kRingMcp, kPinkyMcp}) sum += hand.at(i);
  return sum / 5.0;
}

HandGesture classify_hand(const HandLandmarks& hand, const CurlProfile& profile, const GestureConfig& cfg) {
  using namespace landmark;
  HandGesture out{hand.handedness, GestureKind::None, palm_centroid(hand), profile};

  const auto is = [&](Finger f, CurlClass c) { return profile[f].curl == c; };
  const auto bent = [&](Finger f) { return profile[f].curl != CurlClass::NoCurl; };
  const bool others_straight =
      is(Finger::Middle, CurlClass::NoCurl) && is(Finger::Ring, CurlClass::NoCurl) && is(Finger::Pinky, CurlClass::NoCurl);

  const double size = hand_size(hand);
  const Vec2 thumb_tip = hand.at(kThumbTip);
  const Vec2 index_tip = hand.at(kIndexTip);

  if (size > 0.0 && distance(thumb_tip, index_tip) < cfg.pinch_ratio * size && others_straight) {
    out.kind = GestureKind::Pinch;
    out.anchor = midpoint(thumb_tip, index_tip);
  } else if (is(Finger::Index, CurlClass::NoCurl) && bent(Finger::Middle) && bent(Finger::Ring) &&
             bent(Finger::Pinky)) {
    out.kind = GestureKind::Point;
    out.anchor = index_tip;
  } else if (is(Finger::Index, CurlClass::FullCurl) && is(Finger::Middle, CurlClass::FullCurl) &&
             is(Finger::Ring, CurlClass::FullCurl) && is(Finger::Pinky, CurlClass::FullCurl) &&
             bent(Finger::Thumb)) {
    out.kind = GestureKind::Fist;
  } else if (std::all_of(kFingers.begin(), kFingers.end(), [&](Finger f) { return is(f, CurlClass::NoCurl); })) {
    out.kind = GestureKind::OpenPalm;
  }
  return out;
}

HandGesture recognize_hand(const HandLandmarks& hand, const GestureConfig& cfg) {
  try {
    return classify_hand(hand, curl_profile(hand, cfg), cfg);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateFinger) throw;
    return {hand.handedness, GestureKind::None, palm_centroid(hand), std::nullopt};
  }
}

const HandGesture* RawGesture::find(Handedness h) const noexcept {
  for (const auto& g : hands) {
    if (g.hand == h) return &g;
  }
  return nullptr;
}

RawGesture combine_hands(std::span<const HandGesture> hands) {
  RawGesture raw;
  raw.hands.assign(hands.begin(), hands.end());
  std::stable_sort(raw.hands.begin(), raw.hands.end(),
                   [](const HandGesture& a, const HandGesture& b) { return slot_of(a.hand) < slot_of(b.hand); });
  const HandGesture* left = raw.find(Handedness::Left);
  const HandGesture* right = raw.find(Handedness::Right);
  if (left && right && left->kind == GestureKind::OpenPalm && right->kind == GestureKind::OpenPalm) {
    raw.two_hand = ZoomCandidate{left->anchor, right->anchor};
  }
  return raw;
}

namespace {

struct Observation {
  GestureKind kind = GestureKind::None;
  Vec2 anchor;
  std::optional<ZoomCandidate> zoom;
};

class TrackStepper {
 public:
  TrackStepper(const GestureConfig& cfg, std::int64_t ts, std::optional<Handedness> hand,
               std::vector<GestureEvent>& out)
      : cfg_(cfg), ts_(ts), hand_(hand), out_(out) {}

  void step(DebounceState::Track& t, const Observation& o) {
    if (t.active != GestureKind::None) {
      if (o.kind == t.active) {
        t.misses = 0;
        t.pending = GestureKind::None;
        t.streak = 0;
        remember(t, o);
        emit(GesturePhase::Update, t);
        return;
      }
      ++t.misses;
      advance_pending(t, o);
      if (t.misses < cfg_.release_frames) return;
      end(t);
    } else {
      advance_pending(t, o);
    }
    if (t.pending != GestureKind::None && t.streak >= cfg_.activation_frames) {
      t.active = t.pending;
      t.pending = GestureKind::None;
      t.streak = 0;
      t.misses = 0;
      remember(t, o);
      emit(GesturePhase::Start, t);
    }
  }

  void end(DebounceState::Track& t) {
    if (t.active == GestureKind::None) return;
    emit(GesturePhase::End, t);
    t.active = GestureKind::None;
    t.misses = 0;
  }

 private:
  static void advance_pending(DebounceState::Track& t, const Observation& o) {
    if (o.kind == GestureKind::None) {
      t.pending = GestureKind::None;
      t.streak = 0;
    } else if (o.kind == t.pending) {
      ++t.streak;
    } else {
      t.pending = o.kind;
      t.streak = 1;
    }
  }

  static void remember(DebounceState::Track& t, const Observation& o) {
    t.last_anchor = o.anchor;
    t.last_zoom = o.zoom;
  }

  void emit(GesturePhase phase, const DebounceState::Track& t) {
    out_.push_back({phase, t.active, hand_, t.last_anchor, t.last_zoom, ts_});
  }

  const GestureConfig& cfg_;
  std::int64_t ts_;
  std::optional<Handedness> hand_;
  std::vector<GestureEvent>& out_;
};

}  // namespace

std::vector<GestureEvent> debounce_step(DebounceState& state, const RawGesture& raw, const GestureConfig& cfg,
                                        std::int64_t timestamp_ms) {
  std::vector<GestureEvent> zoom_events;
  Observation zoom_obs;
  if (raw.two_hand) {
    zoom_obs = {GestureKind::Zoom, midpoint(raw.two_hand->left_palm, raw.two_hand->right_palm), raw.two_hand};
  }
  auto& zoom_track = state.tracks[DebounceState::kZoomTrack];
  TrackStepper(cfg, timestamp_ms, std::nullopt, zoom_events).step(zoom_track, zoom_obs);
  const bool zoom_active = zoom_track.active == GestureKind::Zoom;

  std::vector<GestureEvent> events;
  for (Handedness h : {Handedness::Left, Handedness::Right}) {
    auto& track = state.tracks[slot_of(h)];
    TrackStepper stepper(cfg, timestamp_ms, h, events);
    if (zoom_active) {
      stepper.end(track);
      track = DebounceState::Track{};
      continue;
    }
    Observation obs;
    if (const HandGesture* g = raw.find(h)) obs = {g->kind, g->anchor, std::nullopt};
    stepper.step(track, obs);
  }
  events.insert(events.end(), zoom_events.begin(), zoom_events.end());
  return events;
}

}  // namespace hanstream
