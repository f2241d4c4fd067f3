#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace radig {

/// Raised for malformed inputs and broken data-structure invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised for filesystem and codec failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Sentinel for absent parent/child/neighbor links.
inline constexpr std::int32_t kNotConnected = -1;

/// Single-channel raster, row major.
template <typename T>
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Plane() = default;
  Plane(int w, int h, T fill = T{})
      : width(w), height(h), data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  T& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  const T& at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  T* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
  const T* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Plane& other) const { return width == other.width && height == other.height; }
};

using PlaneF = Plane<float>;

/// Interleaved 8-bit sRGB triplets, row major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

  const std::uint8_t* pixel(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  std::uint8_t* pixel(int x, int y) {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  std::int64_t pixel_count() const { return static_cast<std::int64_t>(width) * height; }
};

/// Planar CIE-Lab channels sharing one raster shape.
struct LabImage {
  PlaneF L;
  PlaneF a;
  PlaneF b;

  int width() const { return L.width; }
  int height() const { return L.height; }
};

/// Dense per-pixel region ids in [0, region_count); every id occurs and each
/// id's pixel set is 4-connected.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  std::int32_t region_count = 0;

  LabelMap() = default;
  LabelMap(int w, int h)
      : width(w), height(h), labels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  std::int32_t& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
  std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  std::int64_t pixel_count() const { return static_cast<std::int64_t>(width) * height; }
};

}  // namespace radig
