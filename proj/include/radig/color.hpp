#pragma once

#include "radig/image.hpp"

namespace radig {

struct LabPixel {
  float L;
  float a;
  float b;
};

/// Converts one 8-bit sRGB triplet: piecewise sRGB decode, D65 XYZ, CIE-Lab.
LabPixel srgb_to_lab_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Converts a whole image. Requires width and height >= 5 (filter support of
/// the downstream derivative stage). Parallel over rows.
LabImage srgb_to_lab(const RgbImage& img);

namespace reference {
/// Serial twin of srgb_to_lab; bit-identical output.
LabImage srgb_to_lab(const RgbImage& img);
}  // namespace reference

}  // namespace radig
