#include "radig/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <unordered_map>
#include <vector>

namespace radig {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

bool has_png_signature(std::FILE* f) {
  unsigned char sig[8];
  const std::size_t got = std::fread(sig, 1, 8, f);
  std::rewind(f);
  return got == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

RgbImage read_rgb_png(std::FILE* f, const std::string& name) {
  PngReader r;
  if (!r.png || !r.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode PNG '" + name + "'");
  png_init_io(r.png, f);
  png_read_info(r.png, r.info);

  png_set_strip_16(r.png);
  png_set_palette_to_rgb(r.png);
  png_set_expand_gray_1_2_4_to_8(r.png);
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  png_set_strip_alpha(r.png);
  png_set_gray_to_rgb(r.png);
  png_read_update_info(r.png, r.info);

  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  if (png_get_rowbytes(r.png, r.info) != w * 3) {
    throw IoError("unexpected PNG row layout in '" + name + "'");
  }
  RgbImage img(static_cast<int>(w), static_cast<int>(h));
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.data.data() + static_cast<std::size_t>(y) * w * 3;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

RgbImage read_ppm(std::FILE* f, const std::string& name) {
  auto fail = [&name]() -> void { throw IoError("malformed PPM '" + name + "'"); };
  auto next_token = [&]() {
    std::string tok;
    int c;
    while ((c = std::fgetc(f)) != EOF) {
      if (c == '#') {
        while ((c = std::fgetc(f)) != EOF && c != '\n') {
        }
      } else if (!std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        while ((c = std::fgetc(f)) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
        break;
      }
    }
    return tok;
  };
  if (next_token() != "P6") fail();
  int w = 0;
  int h = 0;
  int maxval = 0;
  try {
    w = std::stoi(next_token());
    h = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    fail();
  }
  if (w < 1 || h < 1 || maxval != 255) fail();
  RgbImage img(w, h);
  if (std::fread(img.data.data(), 1, img.data.size(), f) != img.data.size()) fail();
  return img;
}

}  // namespace

RgbImage read_rgb(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  if (has_png_signature(f.get())) return read_rgb_png(f.get(), path.string());
  return read_ppm(f.get(), path.string());
}

LabelMap read_label_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  if (!has_png_signature(f.get())) throw IoError("'" + path.string() + "' is not a PNG");
  PngReader r;
  if (!r.png || !r.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode PNG '" + path.string() + "'");
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  const int color = png_get_color_type(r.png, r.info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    throw IoError("label PNG '" + path.string() + "' must be grayscale");
  }
  png_set_expand_gray_1_2_4_to_8(r.png);
  png_read_update_info(r.png, r.info);
  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);

  LabelMap map(static_cast<int>(w), static_cast<int>(h));
  std::vector<png_byte> buffer(png_get_rowbytes(r.png, r.info));
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(r.png, buffer.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) {
      std::int32_t value;
      if (depth == 16) {
        value = (static_cast<std::int32_t>(buffer[2 * x]) << 8) | buffer[2 * x + 1];
      } else {
        value = buffer[x];
      }
      map.at(static_cast<int>(x), static_cast<int>(y)) = value;
    }
  }
  png_read_end(r.png, nullptr);

  // Compact ids in raster order of first occurrence.
  std::unordered_map<std::int32_t, std::int32_t> remap;
  std::int32_t next = 0;
  for (std::int32_t& l : map.labels) {
    auto [it, inserted] = remap.emplace(l, next);
    if (inserted) ++next;
    l = it->second;
  }
  map.region_count = next;
  return map;
}

namespace {

void write_gray_png(const std::filesystem::path& path, int width, int height, int depth,
                    const std::vector<png_byte>& packed) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  if (!w.png || !w.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(w.png))) throw IoError("failed to encode PNG '" + path.string() + "'");
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, width, height, depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  const std::size_t stride = static_cast<std::size_t>(width) * (depth / 8);
  for (int y = 0; y < height; ++y) {
    png_write_row(w.png, const_cast<png_bytep>(packed.data() + y * stride));
  }
  png_write_end(w.png, nullptr);
}

}  // namespace

void write_label_png(const std::filesystem::path& path, const LabelMap& map) {
  if (map.region_count > 65536) {
    throw ValidationError("write_label_png: more than 65536 regions cannot be stored in 16 bits");
  }
  std::vector<png_byte> packed(static_cast<std::size_t>(map.width) * map.height * 2);
  for (std::int64_t i = 0; i < map.pixel_count(); ++i) {
    const std::uint16_t v = static_cast<std::uint16_t>(map.labels[i]);
    packed[2 * i] = static_cast<png_byte>(v >> 8);
    packed[2 * i + 1] = static_cast<png_byte>(v & 0xff);
  }
  write_gray_png(path, map.width, map.height, 16, packed);
}

void write_gray_png8(const std::filesystem::path& path, const PlaneF& plane) {
  std::vector<png_byte> packed(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const float v = std::clamp(plane.data[i], 0.0f, 1.0f);
    packed[i] = static_cast<png_byte>(std::lround(v * 255.0f));
  }
  write_gray_png(path, plane.width, plane.height, 8, packed);
}

void write_gray_png16(const std::filesystem::path& path, const PlaneF& plane) {
  std::vector<png_byte> packed(plane.size() * 2);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const float v = std::clamp(plane.data[i], 0.0f, 1.0f);
    const std::uint16_t q = static_cast<std::uint16_t>(std::lround(v * 65535.0f));
    packed[2 * i] = static_cast<png_byte>(q >> 8);
    packed[2 * i + 1] = static_cast<png_byte>(q & 0xff);
  }
  write_gray_png(path, plane.width, plane.height, 16, packed);
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

}  // namespace radig
