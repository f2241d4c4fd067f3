#pragma once

#include "radig/agglomerate.hpp"
#include "radig/color.hpp"
#include "radig/distance.hpp"
#include "radig/filters.hpp"
#include "radig/graph.hpp"
#include "radig/hierarchy.hpp"
#include "radig/watershed.hpp"

namespace radig {

/// Everything the pipeline produces for one image.
struct PipelineResult {
  LabImage lab;
  PlaneF grad;
  LabelMap atoms;
  Hierarchy hierarchy;  // carries atoms as well
  UcmLevels levels;
};

/// Full run: colorspace, gradient, watershed, graph founding, agglomeration,
/// level monotonization.
PipelineResult run_pipeline(const RgbImage& img, const DistanceConfig& cfg);

/// Deterministic uniform-noise test image.
RgbImage noise_image(int width, int height, std::uint32_t seed);

}  // namespace radig
