// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "demo_trace.hpp"
#include "hands.hpp"
#include "hanstream/error.hpp"
#include "hanstream/gesture.hpp"
#include "hanstream/graph_layout.hpp"
#include "hanstream/interaction.hpp"
#include "hanstream/session.hpp"
#include "hanstream/story.hpp"
#include "hanstream/trace.hpp"

using namespace hanstream;
using namespace hanstream::testing;
using json = nlohmann::json;

namespace {

const std::string kData = HANSTREAM_TEST_DATA;
const std::string kDemo = HANSTREAM_DEMO_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps counting checks.
struct Checker {
  Outcome out;
  long checks = 0;
  bool operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
    return ok;
  }
  Outcome done(const std::string& summary) {
    if (out.pass) out.detail = summary + ", " + std::to_string(checks) + " checks";
    return out;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<Errc>(-1);
}

// 1. Curl angle.
Outcome curl_angle_criterion() {
  Checker c;
  const auto oracle = [](Vec2 a, Vec2 b, Vec2 d) {
    const double ux = a.x - b.x, uy = a.y - b.y, vx = d.x - b.x, vy = d.y - b.y;
    return std::acos((ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy))) * 180.0 / std::numbers::pi;
  };
  const double straight = curl_angle({0, 0}, {1, 0}, {2, 0});
  const double right = curl_angle({0, 1}, {0, 0}, {1, 0});
  const double th = 150.0 * std::numbers::pi / 180.0;
  const Vec2 end{std::cos(th), std::sin(th)};
  const double derived = curl_angle({1, 0}, {0, 0}, end);
  c(std::abs(straight - 180.0) < 1e-6, "collinear triple gave " + fmt(straight));
  c(std::abs(right - 90.0) < 1e-6, "right angle gave " + fmt(right));
  c(std::abs(derived - oracle({1, 0}, {0, 0}, end)) < 1e-6, "150 degree case disagrees with the dot-product oracle");
  c(std::abs(derived - 150.0) < 1e-6, "150 degree case gave " + fmt(derived));
  return c.done("180/90/150 within 1e-6 deg");
}

// 2. Classification suite with scale and mirror invariance.
HandPose boundary_pose(GestureKind kind, std::mt19937_64& rng, Handedness hand) {
  const GestureConfig cfg;
  const double no = cfg.no_curl_min_deg + 3, half_lo = cfg.full_curl_max_deg + 3, half_hi = cfg.no_curl_min_deg - 3,
               full = cfg.full_curl_max_deg - 3;
  std::bernoulli_distribution coin(0.5);
  const auto bent = [&] { return coin(rng) ? (coin(rng) ? half_lo : half_hi) : full; };
  auto pose = random_pose(kind, rng, hand);
  switch (kind) {
    case GestureKind::Point: pose.angles = {bent(), no, bent(), bent(), bent()}; break;
    case GestureKind::Pinch:
      pose.angles = {bent(), bent(), no, no, no};
      pose.pinch_gap = cfg.pinch_ratio - 0.03;
      break;
    case GestureKind::Fist: pose.angles = {coin(rng) ? half_lo : half_hi, full, full, full, full}; break;
    default: pose.angles = {no, no, no, no, no}; break;
  }
  return pose;
}

Outcome classification_criterion() {
  Checker c;
  const GestureConfig cfg;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  int hands = 0;
  for (GestureKind kind : {GestureKind::Point, GestureKind::Pinch, GestureKind::Fist, GestureKind::OpenPalm}) {
    const std::string name(gesture_name(kind));
    for (int i = 0; i < 60; ++i) {
      const Handedness h = i % 2 ? Handedness::Left : Handedness::Right;
      const HandPose pose = i < 30 ? random_pose(kind, rng, h) : boundary_pose(kind, rng, h);
      const HandLandmarks hand = build_hand(pose);
      ++hands;
      c(recognize_hand(hand, cfg).kind == kind, name + " hand " + std::to_string(i) + " misclassified");
      const HandLandmarks scaled = scale_about(hand, pose.wrist, scale(rng));
      c(recognize_hand(scaled, cfg).kind == kind, name + " hand " + std::to_string(i) + " not scale invariant");
      const HandLandmarks mirrored = mirror_frame(HandFrame{0, {hand}}).hands[0];
      c(recognize_hand(mirrored, cfg).kind == kind, name + " hand " + std::to_string(i) + " not mirror invariant");
    }
  }
  return c.done(std::to_string(hands) + " hands, 60 per kind");
}

// 3. Debounce bracketing.
Outcome debounce_criterion() {
  Checker c;
  std::mt19937_64 rng(99);
  const GestureKind kinds[] = {GestureKind::None, GestureKind::Point, GestureKind::Pinch, GestureKind::Fist,
                               GestureKind::OpenPalm};
  std::uniform_int_distribution<int> pick(0, 4), run_len(1, 6), hand_count(0, 2);
  const GestureConfig cfg;
  DebounceState state;
  std::map<std::pair<int, GestureKind>, bool> open;
  const auto slot = [](const GestureEvent& e) { return e.hand ? static_cast<int>(*e.hand) : -1; };
  const auto consume = [&](const std::vector<GestureEvent>& evs) {
    for (const auto& e : evs) {
      auto& o = open[{slot(e), e.kind}];
      if (e.phase == GesturePhase::Start) {
        c(!o, "Start while already open");
        if (e.hand) {
          for (const auto& [key, is_open] : open) {
            if (key.first == slot(e) && key.second != e.kind) c(!is_open, "two kinds open on one hand");
          }
        }
        o = true;
      } else {
        c(o, std::string(phase_name(e.phase)) + " without Start");
        if (e.phase == GesturePhase::End) o = false;
      }
    }
    bool zoom = open[{-1, GestureKind::Zoom}];
    if (zoom) {
      for (const auto& [key, is_open] : open) {
        if (key.first >= 0) c(!is_open, "hand gesture open during zoom");
      }
    }
  };
  std::int64_t ts = 0;
  int frames = 0;
  while (frames < 10000) {
    const int n = hand_count(rng);
    std::vector<HandGesture> hands;
    GestureKind k[2] = {kinds[pick(rng)], kinds[pick(rng)]};
    const int len = run_len(rng);
    for (int i = 0; i < len && frames < 10000; ++i, ++frames) {
      hands.clear();
      for (int h = 0; h < n; ++h) {
        hands.push_back({h == 0 ? Handedness::Right : Handedness::Left, k[h], {0.5, 0.5}, std::nullopt});
      }
      consume(debounce_step(state, combine_hands(hands), cfg, ts += 33));
    }
  }
  for (int i = 0; i < cfg.release_frames; ++i) consume(debounce_step(state, combine_hands({}), cfg, ts += 33));
  for (const auto& [key, is_open] : open) c(!is_open, "stream left open after release");

  for (int a = 1; a <= 5; ++a) {
    for (int r = 1; r <= 4; ++r) {
      GestureConfig k;
      k.activation_frames = a;
      k.release_frames = r;
      DebounceState s;
      const std::vector<HandGesture> point{{Handedness::Right, GestureKind::Point, {0.5, 0.5}, std::nullopt}};
      int start_at = -1, end_at = -1;
      for (int f = 1; f <= 10; ++f) {
        for (const auto& e : debounce_step(s, combine_hands(point), k, f)) {
          if (e.phase == GesturePhase::Start && start_at < 0) start_at = f;
        }
      }
      for (int f = 1; f <= 10; ++f) {
        for (const auto& e : debounce_step(s, combine_hands({}), k, 100 + f)) {
          if (e.phase == GesturePhase::End && end_at < 0) end_at = f;
        }
      }
      c(start_at == a, "activation " + std::to_string(a) + " started at frame " + std::to_string(start_at));
      c(end_at == r, "release " + std::to_string(r) + " ended at frame " + std::to_string(end_at));
    }
  }
  return c.done("10000 random frames, 20 hand-built configs");
}

// 4. Hit-test oracle.
std::optional<std::string> brute_hit(const Scene& s, Vec2 screen, double radius) {
  const Vec2 w{(screen.x - s.transform.tx) / s.transform.s, (screen.y - s.transform.ty) / s.transform.s};
  std::optional<std::string> best;
  double best_d = INFINITY;
  for (const auto& m : s.marks) {
    if (!m.hit) continue;
    double d = -1;
    if (const auto* r = std::get_if<RectShape>(&m.shape)) {
      if (w.x >= r->x && w.x <= r->x + r->w && w.y >= r->y && w.y <= r->y + r->h) d = 0;
    } else if (const auto* cs = std::get_if<CircleShape>(&m.shape)) {
      const double dist = std::hypot(w.x - cs->cx, w.y - cs->cy);
      if (dist <= cs->r + radius) d = std::max(0.0, dist - cs->r);
    }
    if (d >= 0 && d < best_d) {
      best_d = d;
      best = m.id;
    }
  }
  return best;
}

Outcome hit_test_criterion() {
  Checker c;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Scene s;
    const int n = 1 + static_cast<int>(u(rng) * 40);
    for (int i = 0; i < n; ++i) {
      Mark m;
      m.id = "m" + std::to_string(i);
      m.hit = u(rng) < 0.9;
      if (u(rng) < 0.4) {
        m.shape = RectShape{u(rng), u(rng), 0.2 * u(rng), 0.2 * u(rng)};
      } else {
        m.shape = CircleShape{u(rng), u(rng), 0.05 * u(rng)};
      }
      s.marks.push_back(m);
    }
    if (trial % 4) s.transform = {kScaleMin + u(rng) * (kScaleMax - kScaleMin), u(rng) - 0.5, u(rng) - 0.5};
    for (int q = 0; q < 20; ++q) {
      const Vec2 p{1.4 * u(rng) - 0.2, 1.4 * u(rng) - 0.2};
      const auto got = hit_test(s, p);
      if (got) ++hits;
      c(got == brute_hit(s, p, kHitRadius), "scene " + std::to_string(trial) + " query " + std::to_string(q));
    }
  }
  return c.done("1000 scenes, " + std::to_string(hits) + " hits");
}

// 5. Zoom fixed point and pan.
Outcome zoom_criterion() {
  Checker c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const ViewTransform t{kScaleMin + u(rng) * (kScaleMax - kScaleMin), u(rng) - 0.5, u(rng) - 0.5};
    const Vec2 focal{u(rng), u(rng)};
    const double s = kScaleMin + u(rng) * (kScaleMax - kScaleMin);
    const auto z = zoom_about(t, focal, s);
    const Vec2 before{(focal.x - t.tx) / t.s, (focal.y - t.ty) / t.s};
    const Vec2 after{(focal.x - z.tx) / z.s, (focal.y - z.ty) / z.s};
    const double moved = std::hypot(after.x - before.x, after.y - before.y);
    worst = std::max(worst, moved);
    c(moved < 1e-9, "focal point moved " + fmt(moved));
    const Vec2 anchor{u(rng), u(rng)}, current{u(rng), u(rng)};
    const auto p = pan_update(t, anchor, current, t.translation());
    c(p.s == t.s, "pan changed the scale");
  }
  return c.done("10000 triples, worst drift " + fmt(worst));
}

// 6. Force layout analytics.
double bisect(double lo, double hi, const std::function<double(double)>& f) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome layout_criterion() {
  Checker c;
  const auto pair = parse_graph(R"({"nodes":[{"id":"a"},{"id":"b"}],"links":[{"source":"a","target":"b"}]})");
  LayoutParams p;
  p.k_center = 0;
  p.energy_epsilon = 1e-20;
  p.max_iterations = 20000;
  p.k_repulse = 0;
  auto sep = [&](const LayoutParams& params) {
    const auto out = run_until_stable(init_layout(pair), pair, params);
    return distance(out.state.positions[0], out.state.positions[1]);
  };
  const double spring_only = sep(p);
  c(std::abs(spring_only - p.rest_length) < 1e-3, "spring-only separation " + fmt(spring_only));
  double worst = std::abs(spring_only - p.rest_length);
  for (double kr : {0.0005, 0.002, 0.01}) {
    p.k_repulse = kr;
    const double root = bisect(1e-3, 10.0, [&](double d) { return p.k_spring * (d - p.rest_length) - kr / (d * d); });
    const double got = sep(p);
    worst = std::max(worst, std::abs(got - root));
    c(std::abs(got - root) < 1e-3, "repulsion " + fmt(kr) + " separation " + fmt(got) + " vs root " + fmt(root));
  }
  const auto chain = parse_graph(read_file(kData + "/small_graph.json"));
  const Vec2 pin{0.123456789, 0.987654321};
  auto s = drag_node(init_layout(chain), chain, "b", pin);
  const LayoutParams defaults;
  for (int i = 0; i < 1000; ++i) {
    s = layout_step(std::move(s), chain, defaults);
    c(s.positions[1].x == pin.x && s.positions[1].y == pin.y, "pinned node moved at step " + std::to_string(i));
  }
  return c.done("worst separation error " + fmt(worst));
}

// 7. DimpVis projection.
Outcome dimpvis_criterion() {
  Checker c;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0), pos(0.1, 0.9);
  TrajectorySet set;
  for (int trial = 0; trial < 100; ++trial) {
    const int steps = 3 + trial % 9;
    Trajectory traj;
    traj.entity = "e" + std::to_string(trial);
    for (int i = 0; i < steps; ++i) {
      traj.positions.push_back({pos(rng), pos(rng)});
      traj.sizes.push_back(0.02);
      traj.rows.push_back(static_cast<std::size_t>(i));
    }
    const double ct = u(rng) * (steps - 1);
    const Vec2 drag{u(rng), u(rng)};
    const double t = project_drag(traj, drag, ct, 1);
    const double lo = std::max(0.0, std::floor(ct) - 1), hi = std::min<double>(steps - 1, std::ceil(ct) + 1);
    double best = INFINITY;
    for (int i = 0; i <= 10000; ++i) {
      const double s = lo + (hi - lo) * i / 10000.0;
      const auto k = static_cast<std::size_t>(std::min(std::floor(s), static_cast<double>(steps - 2)));
      const double f = s - static_cast<double>(k);
      const Vec2 a = traj.positions[k], b = traj.positions[k + 1];
      best = std::min(best, std::hypot(a.x + (b.x - a.x) * f - drag.x, a.y + (b.y - a.y) * f - drag.y));
    }
    c(t >= lo && t <= hi, "projection left the window");
    c(distance(polyline_at(traj, t), drag) <= best + 1e-6, "trajectory " + std::to_string(trial) + " beaten by sampling");
    const double rt = u(rng) * (steps - 1);
    c(std::abs(project_drag(traj, polyline_at(traj, rt), rt) - rt) < 1e-9, "round trip failed");
    if (steps == 8) set.trajectories.push_back(traj);
  }
  for (int i = 0; i < 8; ++i) set.time_labels.push_back(std::to_string(1950 + 5 * i));
  for (int k = 0; k < 8; ++k) {
    const auto poses = positions_at(set, k);
    for (std::size_t e = 0; e < poses.size(); ++e) {
      const Vec2 want = set.trajectories[e].positions[static_cast<std::size_t>(k)];
      c(poses[e].position.x == want.x && poses[e].position.y == want.y, "positions_at not exact at integer t");
    }
  }
  return c.done("100 trajectories, 10^4 samples each");
}

// 8. Scrub from 1955 to 1960.
std::string hud_label(const Session& s) {
  const auto label = json::parse(s.scene_state_snapshot())["hud"]["time_label"];
  return label.is_string() ? label.get<std::string>() : "null";
}

Outcome scrub_criterion() {
  Checker c;
  const auto story = load_story_file(kDemo + "/story.json");
  Session session("default", story, {});
  session.attach_presenter(kReplayPresenter);
  const auto target = pick_scrub_target(session.scene());
  std::int64_t ts = kDemoStartMs;
  const auto feed = [&](const std::vector<TraceRecord>& recs) {
    for (const auto& r : recs) session.handle(kReplayPresenter, parse_inbound(r.msg));
  };
  c(hud_label(session) == "1950", "initial label " + hud_label(session));
  feed(scrub_frames(session.scene(), target.trajectory, 0.0, 1.0, ts));
  const std::string before = hud_label(session);
  c(before == "1955", "label before the scrub is " + before);
  feed(scrub_frames(session.scene(), target.trajectory, 1.0, 2.0, ts));
  const std::string after = hud_label(session);
  c(after == "1960", "label after the scrub is " + after);
  c(session.diagnostics().gesture_starts.count("pinch") && session.diagnostics().gesture_starts.at("pinch") == 2,
    "expected two pinch gestures");
  return c.done("dragged " + target.entity + " " + before + " -> " + after);
}

// 9. Replay determinism and golden log.
Outcome replay_criterion() {
  Checker c;
  const auto story = load_story_file(kDemo + "/story.json");
  std::ifstream in(kDemo + "/demo_trace.jsonl");
  const auto trace = read_trace(in);
  std::size_t frames = 0;
  for (const auto& r : trace) frames += r.msg["type"] == "frame";
  c(frames == 500, "trace has " + std::to_string(frames) + " frames");
  const auto join = [](const ReplayResult& r) {
    std::string s;
    for (const auto& line : r.log) s += line + "\n";
    return s;
  };
  const auto a = join(replay_trace(story, trace)), b = join(replay_trace(story, trace));
  c(a == b, "two replays differ");
  c(a == slurp(kData + "/golden/demo_log.jsonl"), "replay differs from the golden log");
  return c.done(std::to_string(frames) + " frames, " + std::to_string(a.size()) + " bytes");
}

// 10. Story validation and navigation.
Outcome story_criterion() {
  Checker c;
  const auto parse = [](const std::string& doc) { return parse_story(doc, kData); };
  const std::string bar = R"({"id":"a","chart":{"kind":"bar","category_field":"fruit","value_field":"sales"},"data":"bars.csv")";
  c(code_of([&] { parse(R"({"scenes":[)" + bar + "}," + bar + "}]}"); }) == Errc::DuplicateId, "duplicate id");
  c(code_of([&] { parse(R"({"scenes":[)" + bar + R"(,"gestures":["pinch"]}]})"); }) == Errc::UnsupportedGesture,
    "pinch on a bar chart");
  c(code_of([&] {
      parse(R"({"scenes":[{"id":"a","chart":{"kind":"bar","category_field":"fruit","value_field":"sales"},"data":"none.csv"}]})");
    }) == Errc::MissingData,
    "missing data");
  const auto story = load_story_file(kData + "/story_basic.json");
  StoryState s = initial_story_state(story);
  c(navigate(s, story, {NavCommand::Kind::Prev, {}}).state.current == 0, "prev at the start moved");
  s.current = 2;
  c(navigate(s, story, {NavCommand::Kind::Next, {}}).state.current == 2, "next at the end moved");
  s.current = 1;
  Scene growth = materialize_scene(story, s);
  growth.transform = {2.0, -0.3, -0.2};
  growth.dimpvis->nav.cursor.t = 2.0;
  s = navigate(s, story, {NavCommand::Kind::Next, {}}, capture_memory(growth)).state;
  const Scene links = materialize_scene(story, s);
  c(links.transform == ViewTransform{}, "next scene inherited the transform");
  s = navigate(s, story, {NavCommand::Kind::Prev, {}}, capture_memory(links)).state;
  const Scene back = materialize_scene(story, s);
  c(back.transform == ViewTransform{2.0, -0.3, -0.2}, "transform not restored");
  c(back.dimpvis->nav.cursor.t == 2.0, "time cursor not restored");
  return c.done("3 error codes, clamp, restore");
}

// 11. Throughput on a 100-node network with two hands.
std::vector<TraceRecord> throughput_trace(const Scene& network) {
  std::vector<TraceRecord> trace;
  trace.push_back({0, {{"type", "control"}, {"command", "goto"}, {"scene", "network"}}});
  const auto hand_at = [](GestureKind kind, Handedness h, Vec2 at) {
    return place_anchor(build_hand(canonical_pose(kind, h)), kind, at);
  };
  std::vector<Vec2> nodes;
  for (const auto& m : network.marks) {
    if (const auto* cs = std::get_if<CircleShape>(&m.shape); cs && m.hit) nodes.push_back({cs->cx, cs->cy});
  }
  std::int64_t ts = 0;
  for (int i = 0; i < 10000; ++i) {
    ts += 33;
    const int phase = (i / 250) % 4;
    const double w = 0.1 * std::sin(i * 0.05);
    const Vec2 node = nodes[static_cast<std::size_t>(i / 1000) % nodes.size()];
    std::vector<HandLandmarks> hands;
    switch (phase) {
      case 0:
        hands = {hand_at(GestureKind::Point, Handedness::Right, {0.3 + 0.4 * ((i % 250) / 250.0), 0.5 + w}),
                 hand_at(GestureKind::Fist, Handedness::Left, {0.2, 0.8})};
        break;
      case 1:
        hands = {hand_at(GestureKind::Pinch, Handedness::Right, {node.x + w, node.y}),
                 hand_at(GestureKind::Point, Handedness::Left, {0.8, 0.2})};
        break;
      case 2:
        hands = {hand_at(GestureKind::Fist, Handedness::Right, {0.5 + w, 0.5}),
                 hand_at(GestureKind::Pinch, Handedness::Left, {0.1, 0.1})};
        break;
      default:
        hands = {hand_at(GestureKind::OpenPalm, Handedness::Left, {0.3 - w, 0.5}),
                 hand_at(GestureKind::OpenPalm, Handedness::Right, {0.7 + w, 0.5})};
        break;
    }
    trace.push_back(frame_record(camera_frame(ts, hands)));
  }
  return trace;
}

Outcome throughput_criterion(double& seconds) {
  Checker c;
  const auto story = load_story_file(kDemo + "/story.json");
  StoryState s = initial_story_state(story);
  s.current = *story.index_of("network");
  const Scene network = materialize_scene(story, s);
  std::size_t node_count = network.network ? network.network->graph.nodes.size() : 0;
  c(node_count == 100, "network has " + std::to_string(node_count) + " nodes");
  const auto trace = throughput_trace(network);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = replay_trace(story, trace);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c(result.diagnostics.frames_processed == 10000, "processed " + std::to_string(result.diagnostics.frames_processed));
  c(result.final_scene_id == "network", "ended on " + result.final_scene_id);
  c(seconds < 10.0, "replay took " + fmt(seconds) + " s");
  std::string kinds;
  for (const auto& [k, n] : result.diagnostics.gesture_starts) kinds += " " + k + "=" + std::to_string(n);
  return c.done("10000 frames in " + fmt(seconds) + " s (" + fmt(10000 / seconds) + " frames/s), starts:" + kinds);
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 means no time bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  double throughput_s = 0;
  const std::vector<Criterion> criteria = {
      {1, "cosine-rule curl angle", 1, curl_angle_criterion},
      {2, "gesture classification suite", 5, classification_criterion},
      {3, "debounce bracketing", 5, debounce_criterion},
      {4, "hit-test oracle", 10, hit_test_criterion},
      {5, "zoom fixed point", 5, zoom_criterion},
      {6, "force layout analytics", 10, layout_criterion},
      {7, "dimpvis projection", 10, dimpvis_criterion},
      {8, "scrub 1955 to 1960", 0, scrub_criterion},
      {9, "replay determinism and golden log", 10, replay_criterion},
      {10, "story validation", 0, story_criterion},
      {11, "throughput", 0, [&] { return throughput_criterion(throughput_s); }},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs >= cr.budget_s) {
      out.pass = false;
      out.detail += " (over the " + fmt(cr.budget_s) + " s budget)";
    }
    if (!out.pass) ++failed;
    std::printf("%s  %2d  %-34s %8.3f s  %s\n", out.pass ? "PASS" : "FAIL", cr.id, cr.name, secs, out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
