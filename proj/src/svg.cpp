#include "hanstream/svg.hpp"

#include <array>
#include <sstream>

#include "hanstream/dataset.hpp"

namespace hanstream {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr const char* kInk = "#333333";

const char* color_of(const Style& s) {
  if (s.color < 0) return kInk;
  return kPalette[static_cast<std::size_t>(s.color) % kPalette.size()];
}

std::string num(double v) { return format_number(v); }

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void emit(std::ostream& os, const RenderCommand& cmd) {
  const char* color = color_of(cmd.style);
  const std::string stroke = cmd.style.emphasis ? " stroke=\"#000000\" stroke-width=\"0.004\"" : "";
  os << "  ";
  if (const auto* r = std::get_if<RectShape>(&cmd.shape)) {
    if (cmd.layer == Layer::Overlay) {
      os << "<rect id=\"" << escape(cmd.id) << "\" x=\"" << num(r->x) << "\" y=\"" << num(r->y) << "\" width=\""
         << num(r->w) << "\" height=\"" << num(r->h) << "\" fill=\"#ffffff\" fill-opacity=\"0.9\" stroke=\"" << kInk
         << "\" stroke-width=\"0.002\"/>";
    } else {
      os << "<rect id=\"" << escape(cmd.id) << "\" x=\"" << num(r->x) << "\" y=\"" << num(r->y) << "\" width=\""
         << num(r->w) << "\" height=\"" << num(r->h) << "\" fill=\"" << color << "\"" << stroke << "/>";
    }
  } else if (const auto* c = std::get_if<CircleShape>(&cmd.shape)) {
    os << "<circle id=\"" << escape(cmd.id) << "\" cx=\"" << num(c->cx) << "\" cy=\"" << num(c->cy) << "\" r=\""
       << num(c->r) << "\" fill=\"" << color << "\" fill-opacity=\"0.8\"" << stroke << "/>";
  } else if (const auto* p = std::get_if<PolylineShape>(&cmd.shape)) {
    os << "<polyline id=\"" << escape(cmd.id) << "\" points=\"";
    for (std::size_t i = 0; i < p->points.size(); ++i) {
      if (i) os << ' ';
      os << num(p->points[i].x) << ',' << num(p->points[i].y);
    }
    os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << (cmd.style.emphasis ? "0.006" : "0.003")
       << "\"/>";
  } else {
    const auto& t = std::get<TextShape>(cmd.shape);
    os << "<text id=\"" << escape(cmd.id) << "\" x=\"" << num(t.pos.x) << "\" y=\"" << num(t.pos.y)
       << "\" font-size=\"0.025\" font-family=\"sans-serif\" fill=\"" << color << "\">" << escape(t.content)
       << "</text>";
  }
  os << '\n';
}

}  // namespace

std::string render_svg(const std::vector<RenderCommand>& commands) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"1000\" height=\"1000\">\n";
  Layer current = Layer::Background;
  bool open = false;
  for (const auto& cmd : commands) {
    if (!open || cmd.layer != current) {
      if (open) os << " </g>\n";
      os << " <g class=\"" << layer_name(cmd.layer) << "\">\n";
      current = cmd.layer;
      open = true;
    }
    emit(os, cmd);
  }
  if (open) os << " </g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace hanstream
