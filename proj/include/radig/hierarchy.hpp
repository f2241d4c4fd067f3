#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "radig/agglomerate.hpp"

namespace radig {

/// Per-event boundary level: non-decreasing over event time, in (0, 1].
struct UcmLevels {
  std::vector<double> level;
};

/// Boundary strength per unit crack between 4-adjacent pixels. Vertical
/// cracks separate horizontal neighbors ((width-1) x height), horizontal
/// cracks separate vertical neighbors (width x (height-1)). Zero means the
/// flanking pixels share a leaf region.
struct CrackMap {
  int width = 0;
  int height = 0;
  std::vector<float> vertical;
  std::vector<float> horizontal;

  CrackMap() = default;
  CrackMap(int w, int h)
      : width(w),
        height(h),
        vertical(static_cast<std::size_t>(w > 0 ? w - 1 : 0) * h, 0.0f),
        horizontal(static_cast<std::size_t>(w) * (h > 0 ? h - 1 : 0), 0.0f) {}

  float& v(int x, int y) { return vertical[static_cast<std::size_t>(y) * (width - 1) + x]; }
  float v(int x, int y) const { return vertical[static_cast<std::size_t>(y) * (width - 1) + x]; }
  float& hz(int x, int y) { return horizontal[static_cast<std::size_t>(y) * width + x]; }
  float hz(int x, int y) const { return horizontal[static_cast<std::size_t>(y) * width + x]; }
};

/// Turns raw merge distances into ultrametric levels: running max over each
/// event's children (and over event time), then affinely rescaled onto
/// [1/255, 1] so the weakest boundary stays positive. A single-event
/// hierarchy maps to level 1.0.
UcmLevels monotonize(const Hierarchy& h);

/// Partition at threshold t in [0,1]: every pixel takes its highest ancestor
/// whose creating event has level <= t; labels are compacted to 0..R-1 in
/// raster order of first occurrence.
LabelMap cut(const Hierarchy& h, const UcmLevels& levels, double t);

/// Dual contour map: each crack carries the level of the merge event that
/// first united its two flanking leaf regions (their lowest common ancestor).
CrackMap ucm(const Hierarchy& h, const UcmLevels& levels);

/// Raster rendering of a crack map at (2w+1) x (2h+1): pixel cells at odd
/// coordinates are zero, cracks sit at mixed parity, junctions take the max
/// of their incident cracks.
PlaneF render_ucm(const CrackMap& cm);

/// JSON tree document with dimensions, atom count, cluster records, and the
/// event log with raw distances and monotone levels. Deterministic; byte
/// round-trips through parse_hierarchy.
std::string serialize(const Hierarchy& h, const UcmLevels& levels);

struct HierarchyDocument {
  Hierarchy hierarchy;  // clusters and events; no boundaries or atoms
  UcmLevels levels;
};

/// Inverse of serialize. Malformed documents raise ValidationError naming
/// the offending line or field.
HierarchyDocument parse_hierarchy(std::string_view text);

}  // namespace radig
