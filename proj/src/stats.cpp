#include "radig/stats.hpp"

#include <algorithm>
#include <cmath>

namespace radig {

ColorStats StatsAccumulator::finalize() const {
  ColorStats out;
  if (count <= 0) return out;
  const double inv = 1.0 / static_cast<double>(count);
  for (int c = 0; c < 3; ++c) {
    out.mean[c] = sum[c] * inv;
    const double var = std::max(0.0, sum_sq[c] * inv - out.mean[c] * out.mean[c]);
    out.sigma[c] = std::sqrt(var);
  }
  return out;
}

ColorStats merge_stats(const ColorStats& s1, std::int64_t area1, const ColorStats& s2,
                       std::int64_t area2) {
  const double a1 = static_cast<double>(area1);
  const double a2 = static_cast<double>(area2);
  const double total = a1 + a2;
  ColorStats out;
  for (int c = 0; c < 3; ++c) {
    const double m2_1 = a1 * s1.sigma[c] * s1.sigma[c];
    const double m2_2 = a2 * s2.sigma[c] * s2.sigma[c];
    const double delta = s1.mean[c] - s2.mean[c];
    const double m2 = m2_1 + m2_2 + delta * delta * a1 * a2 / total;
    out.mean[c] = (a1 * s1.mean[c] + a2 * s2.mean[c]) / total;
    out.sigma[c] = std::sqrt(std::max(0.0, m2 / total));
  }
  return out;
}

}  // namespace radig
