#include "radig/pipeline.hpp"

#include <random>

namespace radig {

PipelineResult run_pipeline(const RgbImage& img, const DistanceConfig& cfg) {
  PipelineResult out;
  out.lab = srgb_to_lab(img);
  out.grad = gradient_magnitude(out.lab);
  out.atoms = watershed(out.grad);
  RegionGraph graph = found_graph(out.atoms, out.lab, cfg, &out.grad);
  out.hierarchy = agglomerate(std::move(graph), cfg);
  out.hierarchy.atoms = out.atoms;
  out.levels = monotonize(out.hierarchy);
  return out;
}

RgbImage noise_image(int width, int height, std::uint32_t seed) {
  RgbImage img(width, height);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  for (std::uint8_t& v : img.data) v = static_cast<std::uint8_t>(byte(rng));
  return img;
}

}  // namespace radig
