#include "radig/watershed.hpp"

#include <cmath>

namespace radig {

namespace {
constexpr std::int32_t kUnresolved = -1;
}

LabelMap watershed(const PlaneF& grad) {
  const int w = grad.width;
  const int h = grad.height;
  if (w < 1 || h < 1) throw ValidationError("watershed: empty gradient plane");
  const std::size_t n = grad.size();
  for (float v : grad.data) {
    if (!std::isfinite(v)) throw ValidationError("watershed: gradient contains non-finite values");
  }

  const float* g = grad.data.data();
  // Raster-order offsets of the 4-neighborhood: up, left, right, down.
  const int dx[4] = {0, -1, 1, 0};
  const int dy[4] = {-1, 0, 0, 1};

  // Steepest-descent pointer per pixel; kUnresolved where no neighbor is
  // strictly lower. First minimal neighbor in raster order wins ties.
  std::vector<std::int32_t> dir(n, kUnresolved);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      float best = g[p];
      std::int32_t best_q = kUnresolved;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
        if (g[q] < best) {
          best = g[q];
          best_q = static_cast<std::int32_t>(q);
        }
      }
      dir[p] = best_q;
    }
  }

  // Resolve descending plateaus: breadth-first from pixels that already have
  // a descent direction, claiming equal-height unresolved neighbors. Seeding
  // in raster order keeps the geodesic tie-break deterministic.
  std::vector<std::int32_t> fifo;
  fifo.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (dir[p] != kUnresolved) fifo.push_back(static_cast<std::int32_t>(p));
  }
  for (std::size_t head = 0; head < fifo.size(); ++head) {
    const std::int32_t q = fifo[head];
    const int x = q % w;
    const int y = q / w;
    for (int k = 0; k < 4; ++k) {
      const int nx = x + dx[k];
      const int ny = y + dy[k];
      if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
      const std::int32_t p = ny * w + nx;
      if (dir[p] == kUnresolved && g[p] == g[q]) {
        dir[p] = q;
        fifo.push_back(p);
      }
    }
  }

  // Remaining unresolved pixels form regional-minimum plateaus (4-adjacent
  // unresolved pixels always share one height). Each plateau is one seed.
  std::vector<std::int32_t> label(n, kUnresolved);
  std::int32_t regions = 0;
  std::vector<std::int32_t> flood;
  for (std::size_t p0 = 0; p0 < n; ++p0) {
    if (dir[p0] != kUnresolved || label[p0] != kUnresolved) continue;
    const std::int32_t seed = regions++;
    label[p0] = seed;
    flood.clear();
    flood.push_back(static_cast<std::int32_t>(p0));
    for (std::size_t head = 0; head < flood.size(); ++head) {
      const std::int32_t q = flood[head];
      const int x = q % w;
      const int y = q / w;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::int32_t p = ny * w + nx;
        if (dir[p] == kUnresolved && label[p] == kUnresolved) {
          label[p] = seed;
          flood.push_back(p);
        }
      }
    }
  }

  // Assign every remaining pixel the seed its descent chain reaches, with
  // path compression along the walked chain.
  std::vector<std::int32_t> chain;
  for (std::size_t p0 = 0; p0 < n; ++p0) {
    if (label[p0] != kUnresolved) continue;
    chain.clear();
    std::int32_t cur = static_cast<std::int32_t>(p0);
    while (label[cur] == kUnresolved) {
      chain.push_back(cur);
      cur = dir[cur];
    }
    const std::int32_t l = label[cur];
    for (std::int32_t p : chain) label[p] = l;
  }

  LabelMap out;
  out.width = w;
  out.height = h;
  out.labels = std::move(label);
  out.region_count = regions;
  return out;
}

}  // namespace radig
