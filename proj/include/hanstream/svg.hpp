#pragma once

#include <string>
#include <vector>

#include "hanstream/scene.hpp"

namespace hanstream {

/// Standalone SVG document over the unit viewBox, one element per command
/// in list order. Output is byte-stable for equal input.
std::string render_svg(const std::vector<RenderCommand>& commands);

}  // namespace hanstream
