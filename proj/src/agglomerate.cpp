#include "radig/agglomerate.hpp"

#include <algorithm>
#include <string>

namespace radig {

Agglomerator::Agglomerator(RegionGraph graph, DistanceConfig cfg)
    : graph_(std::move(graph)), cfg_(std::move(cfg)) {
  cfg_.validate();
  live_ = static_cast<std::int64_t>(graph_.clusters.size());
  graph_.clusters.reserve(graph_.clusters.size() * 2);
  handle_.assign(graph_.clusters.size(), CandidateQueue::kNoHandle);

  for (const Cluster& c : graph_.clusters) recompute_bookmark(c.id);

  // Seed the queue with every reciprocal nearest-neighbor pair.
  for (const Cluster& c : graph_.clusters) {
    const std::int32_t other = c.nearest_neighbor();
    if (other == kNotConnected || other < c.id) continue;
    if (graph_.clusters[other].nearest_neighbor() != c.id) continue;
    const auto h = queue_.insert(c.adjacency[c.nn_index].distance, c.id, other);
    handle_[c.id] = h;
    handle_[other] = h;
  }
}

std::vector<AdjacencyEntry> Agglomerator::merge_adjacency(std::int32_t a, std::int32_t b) {
  const auto& la = graph_.clusters[a].adjacency;
  const auto& lb = graph_.clusters[b].adjacency;
  std::vector<AdjacencyEntry> out;
  out.reserve(la.size() + lb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < la.size() || j < lb.size()) {
    // Skip the mutual pair entry; it becomes interior to the parent.
    if (i < la.size() && la[i].neighbor == b) {
      ++i;
      continue;
    }
    if (j < lb.size() && lb[j].neighbor == a) {
      ++j;
      continue;
    }
    if (j >= lb.size() || (i < la.size() && la[i].neighbor < lb[j].neighbor)) {
      out.push_back(AdjacencyEntry{la[i].neighbor, la[i].boundary, 0.0});
      ++i;
    } else if (i >= la.size() || lb[j].neighbor < la[i].neighbor) {
      out.push_back(AdjacencyEntry{lb[j].neighbor, lb[j].boundary, 0.0});
      ++j;
    } else {
      // Neighbor touched both children: concatenate the two boundaries.
      const std::int32_t nb = concat_boundaries(graph_, la[i].boundary, lb[j].boundary);
      out.push_back(AdjacencyEntry{la[i].neighbor, nb, 0.0});
      ++i;
      ++j;
    }
  }
  return out;
}

void Agglomerator::recompute_bookmark(std::int32_t c) {
  Cluster& cl = graph_.clusters[c];
  cl.nn_index = kNotConnected;
  for (std::size_t k = 0; k < cl.adjacency.size(); ++k) {
    if (cl.nn_index == kNotConnected ||
        cl.adjacency[k].distance < cl.adjacency[cl.nn_index].distance) {
      cl.nn_index = static_cast<std::int32_t>(k);
    }
  }
}

void Agglomerator::drop_queue_entry(std::int32_t c) {
  const auto h = handle_[c];
  if (h == CandidateQueue::kNoHandle) return;
  const auto entry = queue_.get(h);
  queue_.erase(h);
  handle_[entry.first] = CandidateQueue::kNoHandle;
  handle_[entry.second] = CandidateQueue::kNoHandle;
}

void Agglomerator::refresh_candidates(std::int32_t parent) {
  affected_.clear();
  affected_.push_back(parent);
  for (const AdjacencyEntry& e : graph_.clusters[parent].adjacency) affected_.push_back(e.neighbor);

  // Stale pairs out first: any entry touching an affected cluster may have
  // lost reciprocity, so delete by handle and re-insert below if it held.
  for (std::int32_t c : affected_) drop_queue_entry(c);
  for (std::int32_t c : affected_) recompute_bookmark(c);
  for (std::int32_t c : affected_) {
    if (handle_[c] != CandidateQueue::kNoHandle) continue;
    const Cluster& cl = graph_.clusters[c];
    const std::int32_t other = cl.nearest_neighbor();
    if (other == kNotConnected) continue;
    if (handle_[other] != CandidateQueue::kNoHandle) continue;
    if (graph_.clusters[other].nearest_neighbor() != c) continue;
    const auto h = queue_.insert(cl.adjacency[cl.nn_index].distance, c, other);
    handle_[c] = h;
    handle_[other] = h;
  }
}

bool Agglomerator::step() {
  if (queue_.empty()) return false;
  const CandidateQueue::Entry top = queue_.pop_min();
  const std::int32_t a = top.first;
  const std::int32_t b = top.second;
  handle_[a] = CandidateQueue::kNoHandle;
  handle_[b] = CandidateQueue::kNoHandle;

  const std::int32_t parent_id = static_cast<std::int32_t>(graph_.clusters.size());
  Cluster parent;
  parent.id = parent_id;
  parent.left_child = a;
  parent.right_child = b;
  parent.area = graph_.clusters[a].area + graph_.clusters[b].area;
  parent.stats =
      merge_stats(graph_.clusters[a].stats, graph_.clusters[a].area, graph_.clusters[b].stats,
                  graph_.clusters[b].area);
  parent.adjacency = merge_adjacency(a, b);

  graph_.clusters[a].parent = parent_id;
  graph_.clusters[b].parent = parent_id;
  graph_.clusters[a].alive = false;
  graph_.clusters[b].alive = false;
  graph_.clusters[a].adjacency.clear();
  graph_.clusters[a].adjacency.shrink_to_fit();
  graph_.clusters[a].nn_index = kNotConnected;
  graph_.clusters[b].adjacency.clear();
  graph_.clusters[b].adjacency.shrink_to_fit();
  graph_.clusters[b].nn_index = kNotConnected;

  graph_.clusters.push_back(std::move(parent));
  handle_.push_back(CandidateQueue::kNoHandle);

  // Fresh distances to every parent neighbor, and swap the children out of
  // each neighbor's list. The parent id is the largest so far, so appending
  // keeps those lists sorted.
  Cluster& p = graph_.clusters[parent_id];
  for (AdjacencyEntry& entry : p.adjacency) {
    entry.distance =
        cluster_distance(p, graph_.clusters[entry.neighbor], graph_.boundaries[entry.boundary], cfg_);
    auto& nadj = graph_.clusters[entry.neighbor].adjacency;
    nadj.erase(std::remove_if(nadj.begin(), nadj.end(),
                              [a, b](const AdjacencyEntry& e) {
                                return e.neighbor == a || e.neighbor == b;
                              }),
               nadj.end());
    nadj.push_back(AdjacencyEntry{parent_id, entry.boundary, entry.distance});
  }

  refresh_candidates(parent_id);

  MergeEvent ev;
  ev.time = static_cast<std::int32_t>(events_.size());
  ev.left = a;
  ev.right = b;
  ev.parent = parent_id;
  ev.distance = top.distance;
  events_.push_back(ev);
  --live_;
  return true;
}

void Agglomerator::run() {
  while (step()) {
  }
  if (live_ > 1) {
    throw ValidationError("agglomerate: graph is disconnected, " + std::to_string(live_) +
                          " components remain");
  }
}

Hierarchy Agglomerator::finish() && {
  Hierarchy h;
  h.root = graph_.clusters.empty() ? 0 : static_cast<std::int32_t>(graph_.clusters.size() - 1);
  h.graph = std::move(graph_);
  h.events = std::move(events_);
  return h;
}

Hierarchy agglomerate(RegionGraph graph, const DistanceConfig& cfg) {
  Agglomerator agg(std::move(graph), cfg);
  agg.run();
  return std::move(agg).finish();
}

}  // namespace radig
