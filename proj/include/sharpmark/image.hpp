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

#ifndef SHARPMARK_IMAGE_HPP_
#define SHARPMARK_IMAGE_HPP_

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sharpmark {

/// A 2-D grid of real-valued samples stored row-major. Channel data is
/// nominally in [0,1]; filtered or derived planes may leave that range.
class ImagePlane {
 public:
  ImagePlane() = default;

  ImagePlane(int height, int width, double fill = 0.0)
      : height_(height), width_(width) {
    check_dims(height, width);
    samples_.assign(static_cast<std::size_t>(height) * width, fill);
  }

  ImagePlane(int height, int width, std::vector<double> samples)
      : height_(height), width_(width), samples_(std::move(samples)) {
    check_dims(height, width);
    if (samples_.size() != static_cast<std::size_t>(height) * width) {
      throw std::invalid_argument("ImagePlane: sample count " +
                                  std::to_string(samples_.size()) +
                                  " does not match " + std::to_string(height) +
                                  "x" + std::to_string(width));
    }
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double operator()(int r, int c) const {
    return samples_[static_cast<std::size_t>(r) * width_ + c];
  }
  double& operator()(int r, int c) {
    return samples_[static_cast<std::size_t>(r) * width_ + c];
  }

  /// Replicate-edge read: out-of-range coordinates clamp to the border.
  double at_clamped(int r, int c) const {
    r = std::clamp(r, 0, height_ - 1);
    c = std::clamp(c, 0, width_ - 1);
    return samples_[static_cast<std::size_t>(r) * width_ + c];
  }

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::vector<double>& samples() noexcept { return samples_; }

  bool same_shape(const ImagePlane& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

 private:
  static void check_dims(int height, int width) {
    if (height < 1 || width < 1) {
      throw std::invalid_argument("ImagePlane: dimensions must be >= 1, got " +
                                  std::to_string(height) + "x" +
                                  std::to_string(width));
    }
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> samples_;
};

/// Maximum sample value, scanned row-major.
inline double max_value(const ImagePlane& p) {
  const auto& s = p.samples();
  double m = s[0];
  for (double v : s) m = std::max(m, v);
  return m;
}

/// Minimum sample value, scanned row-major.
inline double min_value(const ImagePlane& p) {
  const auto& s = p.samples();
  double m = s[0];
  for (double v : s) m = std::min(m, v);
  return m;
}

/// Arithmetic mean of all samples, accumulated row-major.
inline double mean_value(const ImagePlane& p) {
  double acc = 0.0;
  for (double v : p.samples()) acc += v;
  return acc / static_cast<double>(p.size());
}

enum class ImageKind { Rgb, Gray };

/// A loaded raster: three planes (R, G, B) or a single gray plane, all
/// samples in [0,1].
struct InputImage {
  ImageKind kind = ImageKind::Gray;
  std::vector<ImagePlane> planes;

  static InputImage rgb(ImagePlane r, ImagePlane g, ImagePlane b) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
      throw std::invalid_argument("InputImage: RGB planes must share dimensions");
    }
    InputImage img;
    img.kind = ImageKind::Rgb;
    img.planes = {std::move(r), std::move(g), std::move(b)};
    return img;
  }

  static InputImage gray(ImagePlane p) {
    InputImage img;
    img.kind = ImageKind::Gray;
    img.planes = {std::move(p)};
    return img;
  }

  int height() const { return planes.at(0).height(); }
  int width() const { return planes.at(0).width(); }
};

/// Luma plus two chroma planes, all sharing one size. Chroma carries a
/// +0.5 offset so achromatic content sits at 0.5.
struct YCbCrImage {
  ImagePlane y;
  ImagePlane cb;
  ImagePlane cr;
};

/// Full-range BT.601 conversion. Gray inputs pass the plane through as luma
/// and get constant 0.5 chroma so downstream code sees one shape.
inline YCbCrImage to_ycbcr(const InputImage& img) {
  YCbCrImage out;
  if (img.kind == ImageKind::Gray) {
    const ImagePlane& p = img.planes.at(0);
    out.y = p;
    out.cb = ImagePlane(p.height(), p.width(), 0.5);
    out.cr = ImagePlane(p.height(), p.width(), 0.5);
    return out;
  }
  const ImagePlane& r = img.planes.at(0);
  const ImagePlane& g = img.planes.at(1);
  const ImagePlane& b = img.planes.at(2);
  const int h = r.height(), w = r.width();
  out.y = ImagePlane(h, w);
  out.cb = ImagePlane(h, w);
  out.cr = ImagePlane(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double rv = r(i, j), gv = g(i, j), bv = b(i, j);
      out.y(i, j) = 0.299 * rv + 0.587 * gv + 0.114 * bv;
      out.cb(i, j) = 0.5 - 0.168736 * rv - 0.331264 * gv + 0.5 * bv;
      out.cr(i, j) = 0.5 + 0.5 * rv - 0.418688 * gv - 0.081312 * bv;
    }
  }
  return out;
}

}  // namespace sharpmark

#endif  // SHARPMARK_IMAGE_HPP_
