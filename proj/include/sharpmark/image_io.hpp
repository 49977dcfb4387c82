// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHARPMARK_IMAGE_IO_HPP_
#define SHARPMARK_IMAGE_IO_HPP_

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpmark/image.hpp"

namespace sharpmark {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] inline void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

// Reads the next PNM header token, skipping whitespace and '#' comments. The
// whitespace byte that terminates the token is left in the stream so the
// caller can consume the single header/raster separator itself.
inline std::string pnm_token(std::istream& in) {
  int c;
  while ((c = in.peek()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) break;
    in.get();
  }
  std::string tok;
  while ((c = in.peek()) != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(in.get()));
  }
  return tok;
}

inline int pnm_int(std::istream& in, const std::filesystem::path& path, const char* field) {
  const std::string tok = pnm_token(in);
  if (tok.empty()) io_fail(path, std::string("truncated header (missing ") + field + ")");
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    io_fail(path, std::string("bad ") + field + " '" + tok + "' in header");
  }
}

inline InputImage load_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open file");
  const std::string magic = pnm_token(in);
  if (magic != "P5" && magic != "P6") {
    io_fail(path, "unsupported PNM type '" + magic + "' (only binary P5/P6)");
  }
  const bool color = magic == "P6";
  const int w = pnm_int(in, path, "width");
  const int h = pnm_int(in, path, "height");
  const int maxval = pnm_int(in, path, "maxval");
  if (w < 1 || h < 1) io_fail(path, "non-positive dimensions");
  if (maxval < 1 || maxval > 65535) io_fail(path, "maxval out of range");
  // Exactly one whitespace byte separates the header from the raster.
  in.get();

  const int channels = color ? 3 : 1;
  const int bytes_per = maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(h) * w * channels;
  std::vector<unsigned char> raw(count * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) io_fail(path, "truncated raster data");

  // True division keeps quantized write/reload cycles bit-exact; a
  // precomputed reciprocal would be one ulp off for some levels.
  const double scale = static_cast<double>(maxval);
  std::vector<ImagePlane> planes;
  for (int c = 0; c < channels; ++c) planes.emplace_back(h, w);
  for (std::size_t k = 0; k < count; ++k) {
    unsigned value;
    if (bytes_per == 2) {
      value = (static_cast<unsigned>(raw[2 * k]) << 8) | raw[2 * k + 1];  // big-endian
    } else {
      value = raw[k];
    }
    planes[k % channels].samples()[k / channels] = value / scale;
  }
  if (color) return InputImage::rgb(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
  return InputImage::gray(std::move(planes[0]));
}

inline InputImage load_png_file(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) io_fail(path, "cannot open file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) io_fail(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    io_fail(path, "png_create_info_struct failed");
  }

  // Declared ahead of setjmp so cleanup runs on the throw below.
  std::vector<unsigned char> raster;
  std::vector<png_bytep> rows;
  std::string error;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_fail(path, "failed to decode PNG");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  (void)png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  if (depth != 8 && depth != 16) error = "unsupported bit depth " + std::to_string(depth);
  if (error.empty() && channels != 1 && channels != 3) {
    error = "unsupported channel count " + std::to_string(channels);
  }
  if (!error.empty()) {
    png_destroy_read_struct(&png, &info, nullptr);
    io_fail(path, error);
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  raster.resize(rowbytes * h);
  rows.resize(h);
  for (int i = 0; i < h; ++i) rows[i] = raster.data() + rowbytes * i;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const double scale = depth == 16 ? 65535.0 : 255.0;
  std::vector<ImagePlane> planes;
  for (int c = 0; c < channels; ++c) planes.emplace_back(h, w);
  for (int i = 0; i < h; ++i) {
    const unsigned char* row = raster.data() + rowbytes * i;
    for (int j = 0; j < w; ++j) {
      for (int c = 0; c < channels; ++c) {
        unsigned value;
        if (depth == 16) {
          const std::size_t k = 2 * (static_cast<std::size_t>(j) * channels + c);
          value = (static_cast<unsigned>(row[k]) << 8) | row[k + 1];  // PNG is big-endian
        } else {
          value = row[static_cast<std::size_t>(j) * channels + c];
        }
        planes[c](i, j) = value / scale;
      }
    }
  }
  if (channels == 3) {
    return InputImage::rgb(std::move(planes[0]), std::move(planes[1]), std::move(planes[2]));
  }
  return InputImage::gray(std::move(planes[0]));
}

inline unsigned quantize(double v, int maxval) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<unsigned>(std::lround(clamped * maxval));
}

}  // namespace detail

/// Loads an 8- or 16-bit grayscale or RGB raster (PNG, binary PGM/PPM).
/// Samples are divided by the container's max value so they lie in [0,1];
/// alpha channels are discarded.
inline InputImage load_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) detail::io_fail(path, "cannot open file");
  unsigned char magic[8] = {};
  probe.read(reinterpret_cast<char*>(magic), 8);
  probe.close();
  if (png_sig_cmp(magic, 0, 8) == 0) return detail::load_png_file(path);
  if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) return detail::load_pnm(path);
  detail::io_fail(path, "unsupported image format (expected PNG or binary PGM/PPM)");
}

/// Writes a plane as binary PGM, quantizing round(v * maxval) with values
/// clamped to [0,1]. maxval 255 gives 8-bit output, larger values 16-bit.
inline void write_pgm(const ImagePlane& p, const std::filesystem::path& path, int maxval = 255) {
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("write_pgm: bad maxval");
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::io_fail(path, "cannot open for writing");
  out << "P5\n" << p.width() << " " << p.height() << "\n" << maxval << "\n";
  for (double v : p.samples()) {
    const unsigned q = detail::quantize(v, maxval);
    if (maxval > 255) out.put(static_cast<char>(q >> 8));
    out.put(static_cast<char>(q & 0xff));
  }
  if (!out) detail::io_fail(path, "write failed");
}

/// Writes an RGB image as binary PPM (see write_pgm for quantization).
inline void write_ppm(const InputImage& img, const std::filesystem::path& path, int maxval = 255) {
  if (img.kind != ImageKind::Rgb) throw std::invalid_argument("write_ppm: image is not RGB");
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("write_ppm: bad maxval");
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::io_fail(path, "cannot open for writing");
  const ImagePlane& r = img.planes[0];
  const ImagePlane& g = img.planes[1];
  const ImagePlane& b = img.planes[2];
  out << "P6\n" << r.width() << " " << r.height() << "\n" << maxval << "\n";
  for (std::size_t k = 0; k < r.size(); ++k) {
    for (const ImagePlane* plane : {&r, &g, &b}) {
      const unsigned q = detail::quantize(plane->samples()[k], maxval);
      if (maxval > 255) out.put(static_cast<char>(q >> 8));
      out.put(static_cast<char>(q & 0xff));
    }
  }
  if (!out) detail::io_fail(path, "write failed");
}

/// Writes a plane as 8-bit PGM after min-max normalization:
/// out = round(255 * (v - min) / (max - min)); an all-equal plane maps to 0.
inline void write_pgm_normalized(const ImagePlane& p, const std::filesystem::path& path) {
  const double lo = min_value(p), hi = max_value(p);
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::io_fail(path, "cannot open for writing");
  out << "P5\n" << p.width() << " " << p.height() << "\n255\n";
  if (hi == lo) {
    for (std::size_t k = 0; k < p.size(); ++k) out.put('\0');
  } else {
    const double scale = 255.0 / (hi - lo);
    for (double v : p.samples()) {
      out.put(static_cast<char>(std::lround((v - lo) * scale)));
    }
  }
  if (!out) detail::io_fail(path, "write failed");
}

}  // namespace sharpmark

#endif  // SHARPMARK_IMAGE_IO_HPP_
