#include <cmath>
#include <random>

#include "doctest.h"
#include "hanstream/error.hpp"
#include "hanstream/scene.hpp"

using namespace hanstream;

namespace {

const std::string kData = HANSTREAM_TEST_DATA;

Scene bar_scene() { return build_scene(BarSpec{"fruit", "sales"}, load_dataset_file(kData + "/bars.csv")); }

Scene network_scene() {
  return build_scene(NetworkSpec{}, parse_graph(read_file(kData + "/small_graph.json")));
}

Scene dimp_scene() {
  return build_scene(DimpVisSpec{"country", "year", "gdp", "life", std::string("pop")},
                     load_dataset_file(kData + "/gapminder_small.csv", "year"));
}

std::vector<std::string> ids_with_prefix(const Scene& s, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& m : s.marks) {
    if (m.id.rfind(prefix, 0) == 0) out.push_back(m.id);
  }
  return out;
}

// Independent scan: nearest hit mark by containment or edge distance.
std::optional<std::string> brute_hit(const Scene& s, Vec2 screen, double radius) {
  const Vec2 w{(screen.x - s.transform.tx) / s.transform.s, (screen.y - s.transform.ty) / s.transform.s};
  std::optional<std::string> best;
  double best_d = 1e300;
  for (const auto& m : s.marks) {
    if (!m.hit) continue;
    double d = -1;
    if (const auto* r = std::get_if<RectShape>(&m.shape)) {
      if (w.x >= r->x && w.x <= r->x + r->w && w.y >= r->y && w.y <= r->y + r->h) d = 0;
    } else if (const auto* c = std::get_if<CircleShape>(&m.shape)) {
      const double dist = std::hypot(w.x - c->cx, w.y - c->cy);
      if (dist <= c->r + radius) d = std::max(0.0, dist - c->r);
    }
    if (d >= 0 && d < best_d) {
      best_d = d;
      best = m.id;
    }
  }
  return best;
}

Scene random_scene(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scene s;
  const int n = 1 + static_cast<int>(u(rng) * 30);
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
  s.transform = {0.25 + 7.75 * u(rng), u(rng) - 0.5, u(rng) - 0.5};
  return s;
}

}  // namespace

TEST_CASE("bar scene geometry") {
  const Scene s = bar_scene();
  CHECK(ids_with_prefix(s, "bar:") == std::vector<std::string>{"bar:apple", "bar:banana", "bar:cherry"});
  const auto& banana = std::get<RectShape>(s.marks[*s.find_mark("bar:banana")].shape);
  const auto& cherry = std::get<RectShape>(s.marks[*s.find_mark("bar:cherry")].shape);
  CHECK(banana.y == doctest::Approx(kPlotArea.y0));
  CHECK(banana.y + banana.h == doctest::Approx(kPlotArea.y1));
  CHECK(cherry.h == doctest::Approx(kPlotArea.height() / 4));
  const double step = kPlotArea.width() / 3;
  CHECK(banana.x == doctest::Approx(kPlotArea.x0 + step + step * kBandPadding / 2));
  CHECK(banana.w == doctest::Approx(step * (1 - kBandPadding)));
}

TEST_CASE("bar scene rejects repeated categories and negative values") {
  CHECK_THROWS_AS(build_scene(BarSpec{"k", "v"}, load_dataset("k,v\na,1\na,2\n", DataFormat::Csv)), Error);
  CHECK_THROWS_AS(build_scene(BarSpec{"k", "v"}, load_dataset("k,v\na,-1\n", DataFormat::Csv)), Error);
  CHECK_THROWS_AS(build_scene(BarSpec{"k", "missing"}, load_dataset("k,v\na,1\n", DataFormat::Csv)), Error);
  CHECK_THROWS_AS(build_scene(BarSpec{"k", "k"}, load_dataset("k,v\na,1\n", DataFormat::Csv)), Error);
}

TEST_CASE("multiline scene builds sorted series and points") {
  const Scene s = build_scene(MultiLineSpec{"year", "value", "series"}, load_dataset_file(kData + "/lines.csv"));
  CHECK(ids_with_prefix(s, "series:") == std::vector<std::string>{"series:north", "series:south"});
  CHECK(ids_with_prefix(s, "point:").size() == 5);
  const auto& north = std::get<PolylineShape>(s.marks[*s.find_mark("series:north")].shape);
  REQUIRE(north.points.size() == 3);
  CHECK(north.points[0].x == doctest::Approx(kPlotArea.x0));
  CHECK(north.points[2].x == doctest::Approx(kPlotArea.x1));
  CHECK(north.points[2].y == doctest::Approx(kPlotArea.y0));
  CHECK(north.points[0].x < north.points[1].x);
}

TEST_CASE("network scene lays out and orders edges before nodes") {
  const Scene s = network_scene();
  REQUIRE(s.network);
  CHECK(ids_with_prefix(s, "node:").size() == 4);
  CHECK(ids_with_prefix(s, "edge:").size() == 3);
  CHECK(*s.find_mark("edge:2") < *s.find_mark("node:a"));
  const auto& a = std::get<CircleShape>(s.marks[*s.find_mark("node:a")].shape);
  CHECK(a.cx == s.network->layout.positions[0].x);
  CHECK(s.data.columns.size() == 3);
  CHECK(std::get<double>(s.data.rows[1][2]) == 2.0);
}

TEST_CASE("dimpvis scene starts at the first time step") {
  Scene s = dimp_scene();
  REQUIRE(s.dimpvis);
  const auto& label = std::get<TextShape>(s.marks[*s.find_mark("time-label")].shape);
  CHECK(label.content == "1950");
  CHECK(ids_with_prefix(s, "bubble:").size() == 2);
  s.dimpvis->nav.cursor.t = 1;
  s.dimpvis->nav.grabbed = 0;
  sync_marks(s);
  CHECK(std::get<TextShape>(s.marks[*s.find_mark("time-label")].shape).content == "1955");
  CHECK(std::get<PolylineShape>(s.marks[*s.find_mark("trail")].shape).points.size() == 3);
  const auto& bubble = s.marks[*s.find_mark("bubble:Aland")];
  CHECK(bubble.row == 1u);
}

TEST_CASE("set_highlight fills the tooltip from the row") {
  Scene s = bar_scene();
  set_highlight(s, s.find_mark("bar:banana"));
  REQUIRE(s.tooltip);
  CHECK(s.tooltip->lines == std::vector<std::string>{"fruit: banana", "sales: 60"});
  set_highlight(s, std::nullopt);
  CHECK_FALSE(s.highlight);
  CHECK_FALSE(s.tooltip);
}

TEST_CASE("render order and highlight layers") {
  Scene s = bar_scene();
  set_highlight(s, s.find_mark("bar:apple"));
  const auto cmds = render_scene(s);
  for (std::size_t i = 1; i < cmds.size(); ++i) CHECK(static_cast<int>(cmds[i - 1].layer) <= static_cast<int>(cmds[i].layer));
  int highlight = 0, overlay_text = 0;
  for (const auto& c : cmds) {
    if (c.layer == Layer::Highlight) {
      ++highlight;
      CHECK(c.style.emphasis);
      CHECK(c.id == "bar:apple");
    }
    if (c.layer == Layer::Overlay && std::holds_alternative<TextShape>(c.shape)) ++overlay_text;
    if (c.layer == Layer::Overlay && std::holds_alternative<RectShape>(c.shape)) {
      const auto& r = std::get<RectShape>(c.shape);
      CHECK(r.x >= 0);
      CHECK(r.y >= 0);
      CHECK(r.x + r.w <= 1.0 + 1e-12);
    }
  }
  CHECK(highlight == 1);
  CHECK(overlay_text == 2);
}

TEST_CASE("transform_shape applies scale then translation") {
  const ViewTransform t{2.0, 0.1, -0.2};
  const auto r = std::get<RectShape>(transform_shape(RectShape{0.1, 0.2, 0.3, 0.4}, t));
  CHECK(r.x == doctest::Approx(0.3));
  CHECK(r.y == doctest::Approx(0.2));
  CHECK(r.w == doctest::Approx(0.6));
  CHECK(r.h == doctest::Approx(0.8));
  const auto c = std::get<CircleShape>(transform_shape(CircleShape{0.5, 0.5, 0.1}, t));
  CHECK(c.r == doctest::Approx(0.2));
}

TEST_CASE("hit_test never returns non-hit marks") {
  const Scene s = network_scene();
  for (const auto& m : s.marks) {
    if (m.id.rfind("edge:", 0) != 0) continue;
    const auto& line = std::get<PolylineShape>(m.shape);
    const Vec2 mid = midpoint(line.points[0], line.points[1]);
    const auto hit = hit_test(s, mid);
    if (hit) CHECK(hit->rfind("node:", 0) == 0);
  }
}

TEST_CASE("hit_test matches a brute-force scan on random scenes") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int trial = 0; trial < 300; ++trial) {
    const Scene s = random_scene(rng);
    for (int q = 0; q < 20; ++q) {
      const Vec2 p{u(rng), u(rng)};
      CHECK(hit_test(s, p) == brute_hit(s, p, kHitRadius));
    }
  }
}

TEST_CASE("hit_test is consistent under view transforms") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Scene s = random_scene(rng);
    Scene identity = s;
    identity.transform = {};
    for (int q = 0; q < 10; ++q) {
      const Vec2 world{u(rng), u(rng)};
      const auto a = hit_test(identity, world);
      const auto b = hit_test(s, s.transform.to_screen(world));
      // Skip points that do not survive the screen round trip exactly.
      const Vec2 back = s.transform.to_world(s.transform.to_screen(world));
      if (distance(back, world) == 0.0) {
        CHECK(a == b);
        ++compared;
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("tied hits resolve to scene order") {
  Scene s;
  s.marks.push_back({"first", CircleShape{0.5, 0.5, 0.05}, Layer::Marks, {}, true, {}, {}});
  s.marks.push_back({"second", CircleShape{0.5, 0.5, 0.05}, Layer::Marks, {}, true, {}, {}});
  CHECK(hit_test(s, {0.5, 0.5}) == "first");
  s.marks.insert(s.marks.begin(), {"rect", RectShape{0.4, 0.4, 0.2, 0.2}, Layer::Marks, {}, true, {}, {}});
  CHECK(hit_test(s, {0.5, 0.5}) == "rect");
  CHECK_FALSE(hit_test(s, {0.9, 0.1}));
}

TEST_CASE("render command json shape") {
  const RenderCommand c{Layer::Marks, "node:a", CircleShape{0.25, 0.5, 0.015}, Style{2, false}};
  const auto j = to_json(c);
  CHECK(j["layer"] == "marks");
  CHECK(j["shape"] == "circle");
  CHECK(j["cx"] == 0.25);
  CHECK(j["color"] == 2);
  CHECK(j["emphasis"] == false);
}

TEST_CASE("text writer agrees with the json tree") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::string texts[] = {"plain", "quote \" and \\ slash", "tab\tnew\nline", std::string("nul\x01", 4), "caf\xc3\xa9"};
  for (int i = 0; i < 400; ++i) {
    RenderCommand cmd;
    cmd.layer = static_cast<Layer>(i % 4);
    cmd.id = texts[i % 5];
    cmd.style = {i % 7 - 1, i % 3 == 0};
    switch (i % 4) {
      case 0: cmd.shape = RectShape{u(rng), u(rng), u(rng), u(rng) * 1e-7}; break;
      case 1: cmd.shape = CircleShape{u(rng) * 1e9, u(rng), std::floor(u(rng))}; break;
      case 2: cmd.shape = PolylineShape{{{u(rng), u(rng)}, {0.1, 1.0 / 3}}}; break;
      default: cmd.shape = TextShape{{u(rng), u(rng)}, texts[(i / 4) % 5]}; break;
    }
    std::string text;
    append_json(text, cmd);
    CHECK(nlohmann::json::parse(text) == to_json(cmd));
  }
  const ViewTransform t{1.5, -0.25, 1e-12};
  std::string text;
  append_json(text, t);
  CHECK(nlohmann::json::parse(text) == to_json(t));
}
