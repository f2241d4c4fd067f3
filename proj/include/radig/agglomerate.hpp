#pragma once

#include <vector>

#include "radig/candidate_queue.hpp"
#include "radig/distance.hpp"
#include "radig/graph.hpp"

namespace radig {

/// One merge in the hierarchy timeline.
struct MergeEvent {
  std::int32_t time = 0;    // 0-based merge ordinal
  std::int32_t left = 0;    // smaller merged cluster id
  std::int32_t right = 0;   // larger merged cluster id
  std::int32_t parent = 0;  // atom_count + time
  double distance = 0.0;    // cluster distance at the merge
};

/// Full merge tree: every cluster (leaves and internal nodes), the boundary
/// set, the chronological event log, and the atomic label map the leaves
/// live on.
struct Hierarchy {
  RegionGraph graph;
  std::vector<MergeEvent> events;
  std::int32_t root = 0;
  LabelMap atoms;
};

/// Greedy agglomeration driven by reciprocal-nearest-neighbor pairs on a
/// handle-addressable priority queue. Stepwise interface so tests and tools
/// can observe the queue and graph between merges.
class Agglomerator {
 public:
  Agglomerator(RegionGraph graph, DistanceConfig cfg);

  /// Performs the next merge; false once no candidate pair remains.
  bool step();

  /// Runs to total unification. Throws ValidationError naming the component
  /// count if the graph is disconnected (each component still gets fully
  /// merged first).
  void run();

  const RegionGraph& graph() const { return graph_; }
  const std::vector<MergeEvent>& events() const { return events_; }
  const CandidateQueue& queue() const { return queue_; }
  std::int64_t live_count() const { return live_; }

  /// Moves the result out; valid after run().
  Hierarchy finish() &&;

 private:
  std::vector<AdjacencyEntry> merge_adjacency(std::int32_t a, std::int32_t b);
  void refresh_candidates(std::int32_t parent);
  void recompute_bookmark(std::int32_t c);
  void drop_queue_entry(std::int32_t c);

  RegionGraph graph_;
  DistanceConfig cfg_;
  std::vector<MergeEvent> events_;
  CandidateQueue queue_;
  std::vector<CandidateQueue::Handle> handle_;  // queue entry per live cluster
  std::vector<std::int32_t> affected_;          // scratch
  std::int64_t live_ = 0;
};

/// Convenience wrapper: found graph in, finished hierarchy out. The atomic
/// label map is not attached here; callers that need cuts or contour maps
/// assign Hierarchy::atoms themselves.
Hierarchy agglomerate(RegionGraph graph, const DistanceConfig& cfg);

}  // namespace radig
