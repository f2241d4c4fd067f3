#include "radig/graph.hpp"

#include <algorithm>
#include <cmath>

#include "radig/distance.hpp"

namespace radig {

namespace {
constexpr double kDiagonalFactor = 0.70710678118654752;  // sqrt(2)/2
constexpr double kLengthFloor = 0.1;
}  // namespace

const AdjacencyEntry* Cluster::find_neighbor(std::int32_t n) const {
  auto it = std::lower_bound(adjacency.begin(), adjacency.end(), n,
                             [](const AdjacencyEntry& e, std::int32_t v) { return e.neighbor < v; });
  if (it == adjacency.end() || it->neighbor != n) return nullptr;
  return &*it;
}

void validate_label_map(const LabelMap& labels) {
  const int w = labels.width;
  const int h = labels.height;
  if (w < 1 || h < 1 || labels.labels.size() != static_cast<std::size_t>(labels.pixel_count())) {
    throw ValidationError("label map: empty or size mismatch");
  }
  const std::int32_t count = labels.region_count;
  if (count < 1) throw ValidationError("label map: region_count must be >= 1");
  for (std::int32_t l : labels.labels) {
    if (l < 0 || l >= count) throw ValidationError("label map: label out of range");
  }

  // Union-find over pixels; same-label 4-neighbors share a set.
  const std::size_t n = labels.labels.size();
  std::vector<std::int32_t> uf(n);
  for (std::size_t i = 0; i < n; ++i) uf[i] = static_cast<std::int32_t>(i);
  auto find = [&uf](std::int32_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t p = y * w + x;
      if (x + 1 < w && labels.labels[p] == labels.labels[p + 1]) uf[find(p + 1)] = find(p);
      if (y + 1 < h && labels.labels[p] == labels.labels[p + w]) uf[find(p + w)] = find(p);
    }
  }
  std::vector<std::int32_t> root_of_label(count, kNotConnected);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t l = labels.labels[i];
    const std::int32_t r = find(static_cast<std::int32_t>(i));
    if (root_of_label[l] == kNotConnected) {
      root_of_label[l] = r;
    } else if (root_of_label[l] != r) {
      throw ValidationError("label map: label " + std::to_string(l) + " is not 4-connected");
    }
  }
  for (std::int32_t l = 0; l < count; ++l) {
    if (root_of_label[l] == kNotConnected) {
      throw ValidationError("label map: label " + std::to_string(l) + " never occurs");
    }
  }
}

RegionGraph found_graph(const LabelMap& labels, const LabImage& lab, const DistanceConfig& cfg,
                        const PlaneF* grad) {
  cfg.validate();
  const int w = labels.width;
  const int h = labels.height;
  if (lab.width() != w || lab.height() != h) {
    throw ValidationError("found_graph: label map and Lab image dimensions differ");
  }
  validate_label_map(labels);
  const bool gm_contrast = cfg.contrast_init == ContrastInit::kGradientMean;
  if (gm_contrast && (grad == nullptr || grad->width != w || grad->height != h)) {
    throw ValidationError("found_graph: gradient plane required for gradient-mean contrast");
  }

  const std::int32_t region_count = labels.region_count;
  RegionGraph graph;
  graph.atom_count = region_count;
  graph.clusters.resize(region_count);
  for (std::int32_t i = 0; i < region_count; ++i) graph.clusters[i].id = i;

  std::vector<StatsAccumulator> acc(region_count);
  std::vector<std::int64_t> crack_count;  // per boundary, plain L1 segments
  std::vector<double> grad_sum;           // per boundary, gm-contrast mode only

  // Locates i in j's sorted adjacency (i < j) or inserts a fresh boundary,
  // then adds this crack's length contribution.
  auto touch_segment = [&](std::int32_t i, std::int32_t j, bool diagonal, float g1, float g2) {
    auto& adj = graph.clusters[j].adjacency;
    auto it = std::lower_bound(adj.begin(), adj.end(), i, [](const AdjacencyEntry& e, std::int32_t v) {
      return e.neighbor < v;
    });
    std::int32_t b;
    if (it != adj.end() && it->neighbor == i) {
      b = it->boundary;
    } else {
      b = static_cast<std::int32_t>(graph.boundaries.size());
      Boundary fresh;
      fresh.id = b;
      graph.boundaries.push_back(fresh);
      crack_count.push_back(0);
      if (gm_contrast) grad_sum.push_back(0.0);
      adj.insert(it, AdjacencyEntry{i, b, 0.0});
    }
    const bool shorten = diagonal && cfg.length_norm == LengthNorm::kL2Approx;
    graph.boundaries[b].length += shorten ? kDiagonalFactor : 1.0;
    ++crack_count[b];
    if (gm_contrast) grad_sum[b] += static_cast<double>(g1) + static_cast<double>(g2);
  };

  // Single scan: statistics plus the boundary cracks toward right and bottom.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t c = labels.at(x, y);
      acc[c].add(lab.L.at(x, y), lab.a.at(x, y), lab.b.at(x, y));

      if (x + 1 < w) {
        const std::int32_t d = labels.at(x + 1, y);
        if (d != c) {
          const std::int32_t below_l = y + 1 < h ? labels.at(x, y + 1) : kNotConnected;
          const std::int32_t below_r = y + 1 < h ? labels.at(x + 1, y + 1) : kNotConnected;
          const bool diag = diagonal_shorten_check(c, d, below_l, below_r);
          touch_segment(std::min(c, d), std::max(c, d), diag, grad ? grad->at(x, y) : 0.0f,
                        grad ? grad->at(x + 1, y) : 0.0f);
        }
      }
      if (y + 1 < h) {
        const std::int32_t d = labels.at(x, y + 1);
        if (d != c) {
          const std::int32_t right_t = x + 1 < w ? labels.at(x + 1, y) : kNotConnected;
          const std::int32_t right_b = x + 1 < w ? labels.at(x + 1, y + 1) : kNotConnected;
          const bool diag = diagonal_shorten_check(c, d, right_t, right_b);
          touch_segment(std::min(c, d), std::max(c, d), diag, grad ? grad->at(x, y) : 0.0f,
                        grad ? grad->at(x, y + 1) : 0.0f);
        }
      }
    }
  }

  for (std::int32_t i = 0; i < region_count; ++i) {
    graph.clusters[i].area = acc[i].count;
    graph.clusters[i].stats = acc[i].finalize();
  }
  for (Boundary& b : graph.boundaries) b.length = std::max(b.length, kLengthFloor);

  // Second pass in ascending id: before this loop touches cluster j, its list
  // holds exactly the smaller-id neighbors from the scan, so appending the
  // backlink (j > i) to each neighbor keeps every list sorted.
  for (std::int32_t j = 0; j < region_count; ++j) {
    for (AdjacencyEntry& entry : graph.clusters[j].adjacency) {
      const std::int32_t i = entry.neighbor;
      if (i >= j) break;  // backlinks from later clusters do not exist yet
      Boundary& b = graph.boundaries[entry.boundary];
      b.contrast = gm_contrast
                       ? grad_sum[entry.boundary] / (2.0 * static_cast<double>(crack_count[entry.boundary]))
                       : init_contrast(graph.clusters[i], graph.clusters[j], cfg);
      entry.distance = cluster_distance(graph.clusters[i], graph.clusters[j], b, cfg);
      graph.clusters[i].adjacency.push_back(AdjacencyEntry{j, entry.boundary, entry.distance});
    }
  }

  // Nearest-neighbor bookmarks once every list is complete.
  for (Cluster& c : graph.clusters) {
    c.nn_index = kNotConnected;
    for (std::size_t k = 0; k < c.adjacency.size(); ++k) {
      if (c.nn_index == kNotConnected || c.adjacency[k].distance < c.adjacency[c.nn_index].distance) {
        c.nn_index = static_cast<std::int32_t>(k);
      }
    }
  }
  return graph;
}

double mean_degree(const RegionGraph& graph) {
  std::int64_t degrees = 0;
  std::int64_t live = 0;
  for (const Cluster& c : graph.clusters) {
    if (!c.alive) continue;
    degrees += static_cast<std::int64_t>(c.adjacency.size());
    ++live;
  }
  return live == 0 ? 0.0 : static_cast<double>(degrees) / static_cast<double>(live);
}

}  // namespace radig
