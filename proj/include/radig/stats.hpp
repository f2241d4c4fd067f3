#pragma once

#include <array>
#include <cstdint>

namespace radig {

/// Diagonal Gaussian color model: per-channel mean and population standard
/// deviation in Lab units.
struct ColorStats {
  std::array<double, 3> mean{0.0, 0.0, 0.0};
  std::array<double, 3> sigma{0.0, 0.0, 0.0};
};

/// Running sums for the ML fit of a pixel set; double precision throughout.
struct StatsAccumulator {
  std::array<double, 3> sum{0.0, 0.0, 0.0};
  std::array<double, 3> sum_sq{0.0, 0.0, 0.0};
  std::int64_t count = 0;

  void add(double L, double a, double b) {
    sum[0] += L;
    sum[1] += a;
    sum[2] += b;
    sum_sq[0] += L * L;
    sum_sq[1] += a * a;
    sum_sq[2] += b * b;
    ++count;
  }

  ColorStats finalize() const;
};

/// Joins two Gaussian fits in constant time. The combined per-channel second
/// moment follows the pairwise update
///   M2 = M2_1 + M2_2 + (mu_1 - mu_2)^2 * A_1*A_2 / (A_1 + A_2),
/// giving the exact population statistics of the concatenated pixel sets.
ColorStats merge_stats(const ColorStats& s1, std::int64_t area1, const ColorStats& s2,
                       std::int64_t area2);

}  // namespace radig
