#pragma once

#include <vector>

#include "radig/hierarchy.hpp"
#include "radig/image.hpp"

namespace radig {

/// One or more annotator partitions of the same image.
struct GroundTruth {
  std::vector<LabelMap> annotators;
};

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

inline double f_measure(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

/// Uniform threshold grid on [0,1], endpoints included.
std::vector<double> uniform_thresholds(int count);

struct FopParams {
  double gamma_object = 0.95;  // mutual relative overlap for an object match
  double gamma_part = 0.25;    // covered fraction for a part match
  std::vector<double> thresholds;
};

/// Object-and-parts precision/recall over the threshold sweep.
///
/// For candidate region r and ground-truth region g with intersection I,
/// write o_r = I/|r| and o_g = I/|g|. The pair is an object match when both
/// o_r and o_g reach gamma_object. Otherwise r is a part of g when
/// o_r >= gamma_object and o_g >= gamma_part (and symmetrically g a part of
/// r), contributing its fraction of overlap with the containing region to
/// both sides' credit. Region credits cap at 1; precision and recall are the
/// mean credits over candidate resp. ground-truth regions, averaged over
/// annotators.
std::vector<PRPoint> fop_curve(const Hierarchy& h, const UcmLevels& levels, const GroundTruth& gt,
                               const FopParams& params);

/// Boundary precision/recall: predicted cracks above each threshold are
/// greedily matched one-to-one against the union of the annotators' boundary
/// cracks within tol_frac * image diagonal.
std::vector<PRPoint> fb_curve(const CrackMap& ucm, const GroundTruth& gt, double tol_frac,
                              const std::vector<double>& thresholds);

struct OdsOis {
  PRPoint ods;       // best F over thresholds shared across the dataset
  double ois = 0.0;  // mean of per-image best F
};

/// Aggregates per-image curves sampled on one shared threshold grid.
OdsOis ods_ois(const std::vector<std::vector<PRPoint>>& per_image_curves);

/// Splits every category label into its 4-connected components, numbering
/// instances in raster order of first occurrence.
LabelMap labels_to_instances(const LabelMap& category_map);

}  // namespace radig
