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

#ifndef SHARPMARK_FILTERS_HPP_
#define SHARPMARK_FILTERS_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpmark/image.hpp"

namespace sharpmark {

/// A square kernel with odd side length (centered support), taps row-major.
class Kernel2D {
 public:
  Kernel2D(int size, std::vector<double> taps)
      : size_(size), taps_(std::move(taps)) {
    if (size < 1 || size % 2 == 0) {
      throw std::invalid_argument("Kernel2D: size must be odd and positive, got " +
                                  std::to_string(size));
    }
    if (taps_.size() != static_cast<std::size_t>(size) * size) {
      throw std::invalid_argument("Kernel2D: tap count does not match size");
    }
  }

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  double operator()(int a, int b) const { return taps_[static_cast<std::size_t>(a) * size_ + b]; }
  double& operator()(int a, int b) { return taps_[static_cast<std::size_t>(a) * size_ + b]; }
  const std::vector<double>& taps() const noexcept { return taps_; }

 private:
  int size_;
  std::vector<double> taps_;
};

/// Sampled Gaussian on the integer grid centered at 0, normalized to unit sum.
inline Kernel2D gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("gaussian_kernel: size must be odd and positive");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  }
  const int r = size / 2;
  std::vector<double> taps(static_cast<std::size_t>(size) * size);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      const double v = std::exp(-(static_cast<double>(x) * x + static_cast<double>(y) * y) * inv);
      taps[static_cast<std::size_t>(y + r) * size + (x + r)] = v;
      sum += v;
    }
  }
  for (double& t : taps) t /= sum;
  return Kernel2D(size, std::move(taps));
}

/// All-pass minus Gaussian: unit impulse at the center with the Gaussian taps
/// subtracted everywhere. Taps sum to zero.
inline Kernel2D highpass_from_gaussian(int size, double sigma) {
  const Kernel2D g = gaussian_kernel(size, sigma);
  std::vector<double> taps = g.taps();
  for (double& t : taps) t = -t;
  const int r = g.radius();
  taps[static_cast<std::size_t>(r) * size + r] += 1.0;
  return Kernel2D(size, std::move(taps));
}

/// Two-dimensional convolution (kernel flipped), same-size output,
/// replicate-edge padding. Window terms accumulate row-major.
inline ImagePlane convolve2d(const ImagePlane& img, const Kernel2D& k) {
  const int h = img.height(), w = img.width();
  const int n = k.size(), r = k.radius();
  if (n > 2 * std::min(h, w) + 1) {
    throw std::invalid_argument("convolve2d: kernel size " + std::to_string(n) +
                                " exceeds 2*min(h,w)+1 for " + std::to_string(h) +
                                "x" + std::to_string(w) + " image");
  }
  ImagePlane out(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        const int u = a - r;
        for (int b = 0; b < n; ++b) {
          const int v = b - r;
          acc += k(a, b) * img.at_clamped(i - u, j - v);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Gaussian blur with truncation radius 3*sigma; sigma == 0 is the identity.
inline ImagePlane gaussian_blur(const ImagePlane& img, double sigma) {
  if (sigma < 0.0) {
    throw std::invalid_argument("gaussian_blur: sigma must be >= 0");
  }
  if (sigma == 0.0) return img;
  const int size = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
  return convolve2d(img, gaussian_kernel(size, sigma));
}

/// Mean over non-overlapping b x b tiles; edge tiles keep their true extent.
/// Every pixel of the output holds its tile's mean.
inline ImagePlane block_mean_nonoverlap(const ImagePlane& img, int b) {
  if (b < 1) {
    throw std::invalid_argument("block_mean_nonoverlap: block size must be >= 1");
  }
  const int h = img.height(), w = img.width();
  ImagePlane out(h, w);
  for (int bi = 0; bi < h; bi += b) {
    const int iend = std::min(bi + b, h);
    for (int bj = 0; bj < w; bj += b) {
      const int jend = std::min(bj + b, w);
      double acc = 0.0;
      for (int i = bi; i < iend; ++i) {
        for (int j = bj; j < jend; ++j) acc += img(i, j);
      }
      const double mean = acc / (static_cast<double>(iend - bi) * (jend - bj));
      for (int i = bi; i < iend; ++i) {
        for (int j = bj; j < jend; ++j) out(i, j) = mean;
      }
    }
  }
  return out;
}

/// Population standard deviation (divide by N) over the b x b window centered
/// at each pixel, replicate-edge padding. Two passes per window, row-major.
inline ImagePlane local_std(const ImagePlane& img, int b) {
  if (b < 1 || b % 2 == 0) {
    throw std::invalid_argument("local_std: window size must be odd and positive");
  }
  const int h = img.height(), w = img.width();
  const int r = b / 2;
  const double inv_n = 1.0 / (static_cast<double>(b) * b);
  ImagePlane out(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int u = -r; u <= r; ++u) {
        for (int v = -r; v <= r; ++v) acc += img.at_clamped(i + u, j + v);
      }
      const double mean = acc * inv_n;
      double ss = 0.0;
      for (int u = -r; u <= r; ++u) {
        for (int v = -r; v <= r; ++v) {
          const double d = img.at_clamped(i + u, j + v) - mean;
          ss += d * d;
        }
      }
      out(i, j) = std::sqrt(ss * inv_n);
    }
  }
  return out;
}

/// Median over the n x n window centered at each pixel, replicate-edge
/// padding. n is odd, so the median is always a single sample.
inline ImagePlane block_median_overlap(const ImagePlane& img, int n) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("block_median_overlap: window size must be odd and positive");
  }
  const int h = img.height(), w = img.width();
  const int r = n / 2;
  const std::size_t count = static_cast<std::size_t>(n) * n;
  ImagePlane out(h, w);
  std::vector<double> window(count);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      std::size_t idx = 0;
      for (int u = -r; u <= r; ++u) {
        for (int v = -r; v <= r; ++v) window[idx++] = img.at_clamped(i + u, j + v);
      }
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(count / 2);
      std::nth_element(window.begin(), mid, window.end());
      out(i, j) = *mid;
    }
  }
  return out;
}

}  // namespace sharpmark

#endif  // SHARPMARK_FILTERS_HPP_
