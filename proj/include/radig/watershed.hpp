#pragma once

#include "radig/image.hpp"

namespace radig {

/// Hill-climbing topographical watershed on a gradient magnitude plane.
///
/// Every regional minimum plateau (4-connectivity) becomes a seed, numbered
/// in raster order of its first pixel; every other pixel follows its
/// steepest-descent 4-neighbor. Descending plateaus are resolved by
/// breadth-first propagation from their descending border pixels. All ties
/// pick the candidate earliest in raster order, so the result is
/// deterministic. No watershed-line pixels: every pixel gets a label.
/// Linear time in the pixel count.
LabelMap watershed(const PlaneF& grad);

}  // namespace radig
