#include "radig/filters.hpp"

#include <cmath>

namespace radig {

namespace {

template <bool Parallel>
PlaneF gradient_impl(const LabImage& lab) {
  if (!lab.L.same_shape(lab.a) || !lab.L.same_shape(lab.b)) {
    throw ValidationError("gradient_magnitude: Lab planes differ in shape");
  }
  const auto dL = detail::derivative_5tap_impl<float, Parallel>(lab.L);
  const auto da = detail::derivative_5tap_impl<float, Parallel>(lab.a);
  const auto db = detail::derivative_5tap_impl<float, Parallel>(lab.b);

  PlaneF g(lab.width(), lab.height());
#pragma omp parallel for schedule(static) if (Parallel)
  for (int y = 0; y < g.height; ++y) {
    const float* lx = dL.dx.row(y);
    const float* ly = dL.dy.row(y);
    const float* ax = da.dx.row(y);
    const float* ay = da.dy.row(y);
    const float* bx = db.dx.row(y);
    const float* by = db.dy.row(y);
    float* dst = g.row(y);
    for (int x = 0; x < g.width; ++x) {
      const float lum = std::sqrt(lx[x] * lx[x] + ly[x] * ly[x]);
      const float chroma =
          std::sqrt(2.0f * (ax[x] * ax[x] + ay[x] * ay[x] + bx[x] * bx[x] + by[x] * by[x]));
      dst[x] = lum + chroma;
    }
  }
  return g;
}

}  // namespace

PlaneF gradient_magnitude(const LabImage& lab) { return gradient_impl<true>(lab); }

namespace reference {
PlaneF gradient_magnitude(const LabImage& lab) { return gradient_impl<false>(lab); }
}  // namespace reference

}  // namespace radig
