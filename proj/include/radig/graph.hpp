#pragma once

#include <cstdint>
#include <vector>

#include "radig/image.hpp"
#include "radig/stats.hpp"

namespace radig {

struct DistanceConfig;

/// One planar edge slot in a cluster's adjacency list.
struct AdjacencyEntry {
  std::int32_t neighbor = kNotConnected;
  std::int32_t boundary = kNotConnected;
  double distance = 0.0;
};

/// Hierarchy node. Adjacency is kept sorted ascending by neighbor id, holds
/// no self-edges, and nn_index bookmarks the minimum-distance entry
/// (smallest neighbor id on ties).
struct Cluster {
  std::int32_t id = 0;
  std::int32_t parent = kNotConnected;
  std::int32_t left_child = kNotConnected;
  std::int32_t right_child = kNotConnected;
  std::vector<AdjacencyEntry> adjacency;
  std::int32_t nn_index = kNotConnected;
  std::int64_t area = 0;
  ColorStats stats;
  bool alive = true;

  std::int32_t nearest_neighbor() const {
    return nn_index == kNotConnected ? kNotConnected : adjacency[nn_index].neighbor;
  }
  const AdjacencyEntry* find_neighbor(std::int32_t n) const;
};

/// Hierarchy edge: length in L2-approximated pixel units (or plain crack
/// count under L1 mode) and the maintained average contrast.
struct Boundary {
  std::int32_t id = 0;
  std::int32_t parent = kNotConnected;
  double length = 0.0;
  double contrast = 0.0;
};

/// Clustering graph over watershed atoms, later extended in place with the
/// internal nodes of the merge tree.
struct RegionGraph {
  std::vector<Cluster> clusters;
  std::vector<Boundary> boundaries;
  std::int32_t atom_count = 0;
};

/// 2x2 window test for a diagonal boundary step. The window reads
///   i j
///   k l
/// with the current segment between i and j; pass kNotConnected for cells
/// clipped at the image border (never equal to a real label).
inline bool diagonal_shorten_check(std::int32_t i, std::int32_t j, std::int32_t k,
                                   std::int32_t l) {
  return (i == l && l != kNotConnected) || (j == k && k != kNotConnected);
}

/// Throws ValidationError unless labels are dense in [0, region_count), every
/// id occurs, and each id's pixel set is 4-connected.
void validate_label_map(const LabelMap& labels);

/// Founds the clustering graph in a single scan: per-cluster area and color
/// statistics, sorted adjacency with boundary lengths (diagonal steps scaled
/// to sqrt(2)/2 under L2 mode), initial contrasts and distances, and the
/// nearest-neighbor bookmark per cluster. `grad` is only needed when the
/// contrast is initialized from the gradient magnitude.
RegionGraph found_graph(const LabelMap& labels, const LabImage& lab, const DistanceConfig& cfg,
                        const PlaneF* grad = nullptr);

/// Mean adjacency-list size over live clusters.
double mean_degree(const RegionGraph& graph);

}  // namespace radig
