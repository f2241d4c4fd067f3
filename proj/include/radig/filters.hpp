#pragma once

#include <algorithm>
#include <array>

#include "radig/image.hpp"

namespace radig {

// Optimized 5-tap smoothing/derivative pair (Farid & Simoncelli), normalized
// so the smoother has unit DC gain and the derivative responds with exactly
// the slope on linear ramps. Derivative sign: positive toward +x / +y.
inline constexpr std::array<double, 5> kFiveTapSmooth = {
    0.037659 / 0.999999, 0.249153 / 0.999999, 0.426375 / 0.999999,
    0.249153 / 0.999999, 0.037659 / 0.999999};
inline constexpr std::array<double, 5> kFiveTapDerivative = {
    -0.109604 / 0.991798, -0.276691 / 0.991798, 0.0,
    0.276691 / 0.991798, 0.109604 / 0.991798};

template <typename T>
struct DerivativePair {
  Plane<T> dx;
  Plane<T> dy;
};

namespace detail {

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Horizontal 5-tap pass with edge replication.
template <typename T, bool Parallel>
Plane<T> convolve_x(const Plane<T>& src, const std::array<double, 5>& k) {
  Plane<T> out(src.width, src.height);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int y = 0; y < src.height; ++y) {
    const T* in = src.row(y);
    T* dst = out.row(y);
    for (int x = 0; x < src.width; ++x) {
      T acc = T(0);
      for (int t = -2; t <= 2; ++t) {
        acc += static_cast<T>(k[t + 2]) * in[clamp_index(x + t, src.width)];
      }
      dst[x] = acc;
    }
  }
  return out;
}

// Vertical 5-tap pass with edge replication.
template <typename T, bool Parallel>
Plane<T> convolve_y(const Plane<T>& src, const std::array<double, 5>& k) {
  Plane<T> out(src.width, src.height);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int y = 0; y < src.height; ++y) {
    const T* rows[5];
    for (int t = -2; t <= 2; ++t) rows[t + 2] = src.row(clamp_index(y + t, src.height));
    T* dst = out.row(y);
    for (int x = 0; x < src.width; ++x) {
      T acc = T(0);
      for (int t = 0; t < 5; ++t) acc += static_cast<T>(k[t]) * rows[t][x];
      dst[x] = acc;
    }
  }
  return out;
}

template <typename T>
Plane<T> transpose(const Plane<T>& src) {
  Plane<T> out(src.height, src.width);
  for (int y = 0; y < src.height; ++y) {
    const T* in = src.row(y);
    for (int x = 0; x < src.width; ++x) out.at(y, x) = in[x];
  }
  return out;
}

// dy is computed as the transpose of dx on the transposed plane, so that
// transposing the input transposes dx<->dy bit-exactly.
template <typename T, bool Parallel>
DerivativePair<T> derivative_5tap_impl(const Plane<T>& plane) {
  if (plane.width < 5 || plane.height < 5) {
    throw ValidationError("derivative_5tap: plane must be at least 5x5");
  }
  DerivativePair<T> out;
  out.dx = convolve_y<T, Parallel>(convolve_x<T, Parallel>(plane, kFiveTapDerivative), kFiveTapSmooth);
  const Plane<T> t = transpose(plane);
  out.dy = transpose(convolve_y<T, Parallel>(convolve_x<T, Parallel>(t, kFiveTapDerivative), kFiveTapSmooth));
  return out;
}

}  // namespace detail

/// Partial derivatives of a plane via the separable 5-tap pair; edge
/// replication at borders. Parallel over rows.
template <typename T>
DerivativePair<T> derivative_5tap(const Plane<T>& plane) {
  return detail::derivative_5tap_impl<T, true>(plane);
}

/// Combined Lab gradient magnitude: the luminance gradient norm plus the
/// sqrt(2)-weighted chromaticity gradient norm, per pixel. Parallel.
PlaneF gradient_magnitude(const LabImage& lab);

namespace reference {
template <typename T>
DerivativePair<T> derivative_5tap(const Plane<T>& plane) {
  return detail::derivative_5tap_impl<T, false>(plane);
}
PlaneF gradient_magnitude(const LabImage& lab);
}  // namespace reference

}  // namespace radig
