#pragma once

#include "radig/graph.hpp"
#include "radig/stats.hpp"

namespace radig {

enum class AppearanceMetric { kWasserstein, kMeanSquaredEuclid };
enum class ContrastInit { kWasserstein, kGradientMean };
enum class LengthNorm { kL2Approx, kL1 };

/// Switches for the threefold cluster distance and its ablation variants.
struct DistanceConfig {
  bool surface_term = true;
  bool boundary_term = true;
  bool linkage_term = true;
  AppearanceMetric appearance = AppearanceMetric::kWasserstein;
  ContrastInit contrast_init = ContrastInit::kWasserstein;
  LengthNorm length_norm = LengthNorm::kL2Approx;
  double epsilon = 1e-12;  // floor for log arguments
  // Per-term weight hooks; 1.0 keeps the plain geometric fusion.
  double surface_weight = 1.0;
  double boundary_weight = 1.0;
  double linkage_weight = 1.0;

  void validate() const;
};

/// 1st Wasserstein distance between diagonal Gaussians over Lab with the
/// L1 ground metric: |mu_P - mu_Q|_1 + |tr sqrt(Sigma_P) - tr sqrt(Sigma_Q)|.
double w1_gaussian(const ColorStats& p, const ColorStats& q);

/// Appearance distance under the configured metric: W1, or the squared
/// Euclidean gap between means for the classic-Ward variant.
double appearance_distance(const ColorStats& p, const ColorStats& q, const DistanceConfig& cfg);

/// Ward-style growth of data variance, with the mean gap lifted to the
/// Wasserstein distance between the cluster color distributions:
///   omega = W1(P,Q)^2 / (1/A_P + 1/A_Q).
double surface_dissimilarity(const Cluster& p, const Cluster& q, const DistanceConfig& cfg);

/// Connectivity of the pair: eta = (A_P * A_Q)^(1/4) / boundary length.
double spatial_linkage(const Cluster& p, const Cluster& q, const Boundary& b);

/// Initial contrast of an atomic boundary from the neighboring atoms'
/// appearance distance. (The gradient-mean variant is accumulated during
/// graph founding, where the boundary pixels are visited.)
double init_contrast(const Cluster& p_atom, const Cluster& q_atom, const DistanceConfig& cfg);

/// Concatenates two boundaries that end up between the same cluster pair:
/// lengths add, contrasts combine as the length-weighted harmonic mean
/// (zero if either side has zero contrast). Both children are reparented to
/// the new boundary. Returns the new boundary id.
std::int32_t concat_boundaries(RegionGraph& graph, std::int32_t b1, std::int32_t b2);

/// Threefold distance: the sum of the enabled log terms, each floored at
/// cfg.epsilon. A geometric fusion, so no cross-term normalization.
double cluster_distance(const Cluster& p, const Cluster& q, const Boundary& b,
                        const DistanceConfig& cfg);

}  // namespace radig
