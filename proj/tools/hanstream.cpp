#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "hanstream/error.hpp"
#include "hanstream/gesture.hpp"
#include "hanstream/landmarks.hpp"
#include "hanstream/protocol.hpp"
#include "hanstream/scene.hpp"
#include "hanstream/server.hpp"
#include "hanstream/story.hpp"
#include "hanstream/svg.hpp"
#include "hanstream/trace.hpp"

namespace fs = std::filesystem;
using namespace hanstream;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& p, std::string_view what) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw RuntimeFailure(std::string(what) + " not found: " + p.string());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write " + p.string());
  return out;
}

std::vector<TraceRecord> load_trace(const fs::path& p) {
  require_file(p, "trace");
  std::ifstream in(p, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot read " + p.string());
  return read_trace(in);
}

int run_replay(const fs::path& story_path, const fs::path& trace_path, const fs::path& out_path) {
  require_file(story_path, "story");
  const StoryScript story = load_story_file(story_path);
  const auto trace = load_trace(trace_path);
  const ReplayResult result = replay_trace(story, trace);
  auto out = open_out(out_path);
  for (const auto& line : result.log) out << line << '\n';
  if (!out.flush()) throw RuntimeFailure("cannot write " + out_path.string());

  const auto& d = result.diagnostics;
  std::cout << "frames: " << d.frames_processed << " processed, " << d.frames_dropped << " dropped\n";
  std::cout << "gestures:";
  if (d.gesture_starts.empty()) std::cout << " none";
  for (const auto& [kind, n] : d.gesture_starts) std::cout << ' ' << kind << '=' << n;
  std::cout << "\nmessages: " << result.log.size() << " written to " << out_path.string() << '\n';
  std::cout << "final scene: " << result.final_scene_id << '\n';
  return kOk;
}

int run_classify(const fs::path& trace_path, const std::optional<fs::path>& out_path) {
  const auto trace = load_trace(trace_path);
  std::ofstream file;
  if (out_path) file = open_out(*out_path);
  std::ostream& out = out_path ? file : std::cout;
  const GestureConfig cfg;
  for (const auto& rec : trace) {
    const auto msg = parse_inbound(rec.msg);
    const auto* frame = std::get_if<FrameMsg>(&msg);
    if (!frame) continue;
    const HandFrame view = mirror_frame(frame->frame);
    for (const auto& hand : view.hands) {
      const HandGesture g = recognize_hand(hand, cfg);
      nlohmann::json line = {{"t", view.timestamp_ms},
                             {"hand", handedness_name(g.hand)},
                             {"kind", gesture_name(g.kind)},
                             {"curls", nullptr}};
      if (g.profile) {
        nlohmann::json curls = nlohmann::json::object();
        for (Finger f : kFingers) {
          const auto& fc = (*g.profile)[f];
          curls[std::string(finger_name(f))] = {{"angle_deg", fc.angle_deg}, {"curl", curl_name(fc.curl)}};
        }
        line["curls"] = std::move(curls);
      }
      out << wire(line) << '\n';
    }
  }
  out.flush();
  return kOk;
}

struct RenderOverrides {
  std::optional<double> scale, tx, ty, time;
};

int run_render(const fs::path& story_path, const std::string& scene_id, const RenderOverrides& o,
               const fs::path& out_path) {
  require_file(story_path, "story");
  const StoryScript story = load_story_file(story_path);
  const auto index = story.index_of(scene_id);
  if (!index) throw Error(Errc::UnknownScene, scene_id);
  StoryState state = initial_story_state(story);
  state.current = *index;
  Scene scene = materialize_scene(story, state);
  if (o.scale) {
    if (!std::isfinite(*o.scale) || *o.scale < kScaleMin || *o.scale > kScaleMax) {
      throw Error(Errc::InvalidConfig, "--scale must lie in [0.25, 8]");
    }
    scene.transform.s = *o.scale;
  }
  if (o.tx) scene.transform.tx = *o.tx;
  if (o.ty) scene.transform.ty = *o.ty;
  if (o.time) {
    if (!scene.dimpvis) throw Error(Errc::InvalidConfig, "--time applies to dimpvis scenes only");
    const double max_t = static_cast<double>(scene.dimpvis->set.steps() - 1);
    if (!std::isfinite(*o.time) || *o.time < 0 || *o.time > max_t) {
      throw Error(Errc::InvalidConfig, "--time out of range");
    }
    scene.dimpvis->nav.cursor.t = *o.time;
    sync_marks(scene);
  }
  auto out = open_out(out_path);
  out << render_svg(render_scene(scene));
  if (!out.flush()) throw RuntimeFailure("cannot write " + out_path.string());
  return kOk;
}

int run_validate(const fs::path& story_path) {
  require_file(story_path, "story");
  const StoryScript story = load_story_file(story_path);
  std::cout << "ok: \"" << story.title << "\", " << story.scenes.size() << " scene(s)\n";
  for (const auto& def : story.scenes) {
    std::cout << "  " << def.id << " (" << chart_kind(def.chart) << ")\n";
  }
  return kOk;
}

int run_serve(const fs::path& story_path, ServerOptions opts) {
  require_file(story_path, "story");
  StoryScript story = load_story_file(story_path);
  opts.session.story_dir = story_path.parent_path();
  opts.handle_signals = true;
  Server server(std::move(story), std::move(opts));
  const auto port = server.start();
  std::cout << "listening on " << port << " (ws path /ws)" << std::endl;
  server.wait();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hanstream: gesture-driven data presentation engine"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  fs::path story, trace, out;
  std::string scene_id;
  RenderOverrides overrides;
  std::optional<fs::path> classify_out;
  ServerOptions serve_opts;
  std::optional<fs::path> static_dir, record_dir;

  auto* serve = app.add_subcommand("serve", "Run the WebSocket session server");
  serve->add_option("--story", story, "Story file")->required();
  serve->add_option("--port", serve_opts.port, "TCP port (0 picks one)")->required();
  serve->add_option("--host", serve_opts.host, "Bind address");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--record", record_dir, "Write one trace per session into this directory");
  serve->add_option("--threads", serve_opts.threads, "I/O threads")->check(CLI::PositiveNumber);

  auto* replay = app.add_subcommand("replay", "Replay a trace headlessly and write the outbound log");
  replay->add_option("--story", story, "Story file")->required();
  replay->add_option("--trace", trace, "Trace file (.jsonl)")->required();
  replay->add_option("--out", out, "Output log (.jsonl)")->required();

  auto* classify = app.add_subcommand("classify", "Classify every hand in a trace");
  classify->add_option("--trace", trace, "Trace file (.jsonl)")->required();
  classify->add_option("--out", classify_out, "Output file (default stdout)");

  auto* render = app.add_subcommand("render", "Render one scene to SVG");
  render->add_option("--story", story, "Story file")->required();
  render->add_option("--scene", scene_id, "Scene id")->required();
  render->add_option("--scale", overrides.scale, "View scale");
  render->add_option("--tx", overrides.tx, "View translation x");
  render->add_option("--ty", overrides.ty, "View translation y");
  render->add_option("--time", overrides.time, "DimpVis time index");
  render->add_option("--out", out, "Output SVG")->required();

  auto* validate = app.add_subcommand("validate", "Parse and check a story");
  validate->add_option("--story", story, "Story file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*serve) {
      serve_opts.static_dir = static_dir;
      serve_opts.trace_dir = record_dir;
      return run_serve(story, serve_opts);
    }
    if (*replay) return run_replay(story, trace, out);
    if (*classify) return run_classify(trace, classify_out);
    if (*render) return run_render(story, scene_id, overrides, out);
    if (*validate) return run_validate(story);
  } catch (const RuntimeFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::InvalidConfig && *serve ? kRuntime : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kInvalid;
}
