#pragma once

#include "mxl/braids.hpp"

#include <string>

namespace mxl {

/// SVG 1.1 strand diagram: time runs left to right, strand colors follow the starting position.
/// For a positive letter the strand moving down is drawn on top.
std::string render_word_svg(const BraidWord& w);

}  // namespace mxl
