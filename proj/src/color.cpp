#include "radig/color.hpp"

#include <array>
#include <cmath>

namespace radig {

namespace {

// sRGB decode table: 8-bit code value -> linear intensity.
const std::array<float, 256>& linear_table() {
  static const std::array<float, 256> table = [] {
    std::array<float, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = static_cast<float>(c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4));
    }
    return t;
  }();
  return table;
}

inline float lab_f(float t) {
  constexpr float kDelta = 6.0f / 29.0f;
  constexpr float kDelta3 = kDelta * kDelta * kDelta;
  if (t > kDelta3) return std::cbrt(t);
  return t / (3.0f * kDelta * kDelta) + 4.0f / 29.0f;
}

void check_dimensions(const RgbImage& img) {
  if (img.width < 5 || img.height < 5) {
    throw ValidationError("srgb_to_lab: image must be at least 5x5, got " +
                          std::to_string(img.width) + "x" + std::to_string(img.height));
  }
  if (img.data.size() != static_cast<std::size_t>(img.pixel_count()) * 3) {
    throw ValidationError("srgb_to_lab: data length does not match 3*width*height");
  }
}

template <bool Parallel>
LabImage convert(const RgbImage& img) {
  check_dimensions(img);
  const auto& lin = linear_table();
  LabImage out;
  out.L = PlaneF(img.width, img.height);
  out.a = PlaneF(img.width, img.height);
  out.b = PlaneF(img.width, img.height);

#pragma omp parallel for schedule(static) if (Parallel)
  for (int y = 0; y < img.height; ++y) {
    const std::uint8_t* src = img.data.data() + static_cast<std::size_t>(y) * img.width * 3;
    float* Lr = out.L.row(y);
    float* ar = out.a.row(y);
    float* br = out.b.row(y);
    for (int x = 0; x < img.width; ++x) {
      const float R = lin[src[3 * x + 0]];
      const float G = lin[src[3 * x + 1]];
      const float B = lin[src[3 * x + 2]];
      // Linear RGB -> XYZ (sRGB primaries, D65 white).
      const float X = 0.4124564f * R + 0.3575761f * G + 0.1804375f * B;
      const float Y = 0.2126729f * R + 0.7151522f * G + 0.0721750f * B;
      const float Z = 0.0193339f * R + 0.1191920f * G + 0.9503041f * B;
      const float fx = lab_f(X / 0.95047f);
      const float fy = lab_f(Y);
      const float fz = lab_f(Z / 1.08883f);
      Lr[x] = 116.0f * fy - 16.0f;
      ar[x] = 500.0f * (fx - fy);
      br[x] = 200.0f * (fy - fz);
    }
  }
  return out;
}

}  // namespace

LabPixel srgb_to_lab_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& lin = linear_table();
  const float R = lin[r], G = lin[g], B = lin[b];
  const float X = 0.4124564f * R + 0.3575761f * G + 0.1804375f * B;
  const float Y = 0.2126729f * R + 0.7151522f * G + 0.0721750f * B;
  const float Z = 0.0193339f * R + 0.1191920f * G + 0.9503041f * B;
  const float fx = lab_f(X / 0.95047f);
  const float fy = lab_f(Y);
  const float fz = lab_f(Z / 1.08883f);
  return {116.0f * fy - 16.0f, 500.0f * (fx - fy), 200.0f * (fy - fz)};
}

LabImage srgb_to_lab(const RgbImage& img) { return convert<true>(img); }

namespace reference {
LabImage srgb_to_lab(const RgbImage& img) { return convert<false>(img); }
}  // namespace reference

}  // namespace radig
