#pragma once

#include <iosfwd>
#include <vector>

#include "loopsoup/soup.hpp"

namespace loopsoup {

// Renders loops as polylines on a fixed canvas.  Loops sharing an index
// (n, z, m) get the same stroke color, so a coupled walk/brownian pair is
// visually matched; uncoupled loops are dashed.  Output is deterministic.
void render_svg(std::ostream& os, const std::vector<const SoupRealization*>& soups);

}  // namespace loopsoup
