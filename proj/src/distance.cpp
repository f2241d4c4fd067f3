#include "radig/distance.hpp"

#include <cmath>

namespace radig {

void DistanceConfig::validate() const {
  if (!surface_term && !boundary_term && !linkage_term) {
    throw ValidationError("DistanceConfig: at least one distance term must be enabled");
  }
  if (!(epsilon > 0.0)) {
    throw ValidationError("DistanceConfig: epsilon must be positive");
  }
}

double w1_gaussian(const ColorStats& p, const ColorStats& q) {
  double mean_gap = 0.0;
  for (int c = 0; c < 3; ++c) mean_gap += std::abs(p.mean[c] - q.mean[c]);
  const double trace_p = p.sigma[0] + p.sigma[1] + p.sigma[2];
  const double trace_q = q.sigma[0] + q.sigma[1] + q.sigma[2];
  return mean_gap + std::abs(trace_p - trace_q);
}

double appearance_distance(const ColorStats& p, const ColorStats& q, const DistanceConfig& cfg) {
  if (cfg.appearance == AppearanceMetric::kWasserstein) return w1_gaussian(p, q);
  double sq = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double d = p.mean[c] - q.mean[c];
    sq += d * d;
  }
  return sq;
}

double surface_dissimilarity(const Cluster& p, const Cluster& q, const DistanceConfig& cfg) {
  const double denom = 1.0 / static_cast<double>(p.area) + 1.0 / static_cast<double>(q.area);
  if (cfg.appearance == AppearanceMetric::kWasserstein) {
    const double w = w1_gaussian(p.stats, q.stats);
    return w * w / denom;
  }
  // Classic Ward: squared Euclidean mean gap over the same area factor.
  return appearance_distance(p.stats, q.stats, cfg) / denom;
}

double spatial_linkage(const Cluster& p, const Cluster& q, const Boundary& b) {
  if (!(b.length > 0.0)) {
    throw ValidationError("spatial_linkage: boundary length must be positive");
  }
  const double area_product = static_cast<double>(p.area) * static_cast<double>(q.area);
  return std::pow(area_product, 0.25) / b.length;
}

double init_contrast(const Cluster& p_atom, const Cluster& q_atom, const DistanceConfig& cfg) {
  return appearance_distance(p_atom.stats, q_atom.stats, cfg);
}

std::int32_t concat_boundaries(RegionGraph& graph, std::int32_t b1, std::int32_t b2) {
  Boundary merged;
  merged.id = static_cast<std::int32_t>(graph.boundaries.size());
  const Boundary& lhs = graph.boundaries[b1];
  const Boundary& rhs = graph.boundaries[b2];
  merged.length = lhs.length + rhs.length;
  if (lhs.contrast <= 0.0 || rhs.contrast <= 0.0) {
    merged.contrast = 0.0;
  } else {
    merged.contrast = merged.length / (lhs.length / lhs.contrast + rhs.length / rhs.contrast);
  }
  graph.boundaries[b1].parent = merged.id;
  graph.boundaries[b2].parent = merged.id;
  graph.boundaries.push_back(merged);
  return merged.id;
}

double cluster_distance(const Cluster& p, const Cluster& q, const Boundary& b,
                        const DistanceConfig& cfg) {
  double d = 0.0;
  if (cfg.surface_term) {
    d += cfg.surface_weight * std::log(std::max(surface_dissimilarity(p, q, cfg), cfg.epsilon));
  }
  if (cfg.boundary_term) {
    d += cfg.boundary_weight * std::log(std::max(b.contrast, cfg.epsilon));
  }
  if (cfg.linkage_term) {
    d += cfg.linkage_weight * std::log(std::max(spatial_linkage(p, q, b), cfg.epsilon));
  }
  return d;
}

}  // namespace radig
