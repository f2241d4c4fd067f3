#pragma once

#include <filesystem>

#include "radig/image.hpp"

namespace radig {

/// Loads an 8-bit RGB image from PNG (any layout, converted) or binary PPM.
RgbImage read_rgb(const std::filesystem::path& path);

/// Loads a grayscale 8/16-bit PNG as a label map; ids are compacted to a
/// dense range in raster order of first occurrence.
LabelMap read_label_png(const std::filesystem::path& path);

/// Writes a label map as 16-bit grayscale PNG. Fails if region_count
/// exceeds 65536.
void write_label_png(const std::filesystem::path& path, const LabelMap& map);

/// Writes a [0,1] plane as 8-bit grayscale PNG.
void write_gray_png8(const std::filesystem::path& path, const PlaneF& plane);

/// Writes a [0,1] plane as 16-bit grayscale PNG.
void write_gray_png16(const std::filesystem::path& path, const PlaneF& plane);

/// Writes a binary PPM (P6); handy for fixtures.
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

}  // namespace radig
