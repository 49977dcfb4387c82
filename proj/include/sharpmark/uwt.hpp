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

#ifndef SHARPMARK_UWT_HPP_
#define SHARPMARK_UWT_HPP_

#include <cmath>
#include <stdexcept>

#include "sharpmark/image.hpp"

namespace sharpmark {

/// Single-level undecimated Haar subbands; all four planes keep the input
/// size. lh is row low-pass / column high-pass (horizontal detail), hl the
/// transpose pairing, hh high-pass in both directions (diagonal detail).
struct UwtSubbands {
  ImagePlane ll;
  ImagePlane lh;
  ImagePlane hl;
  ImagePlane hh;
};

namespace detail {

// One undecimated Haar pass along the given axis with periodic extension.
// Filter alignment: out(i) = f(0)*x(i) + f(1)*x(i-1), indices wrapped.
inline void haar_pass_rows(const ImagePlane& in, ImagePlane& low, ImagePlane& high) {
  const int h = in.height(), w = in.width();
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double cur = in(i, j);
      const double prev = in(i, (j - 1 + w) % w);
      low(i, j) = (cur + prev) * s;
      high(i, j) = (cur - prev) * s;
    }
  }
}

inline void haar_pass_cols(const ImagePlane& in, ImagePlane& low, ImagePlane& high) {
  const int h = in.height(), w = in.width();
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < h; ++i) {
    const int up = (i - 1 + h) % h;
    for (int j = 0; j < w; ++j) {
      const double cur = in(i, j);
      const double prev = in(up, j);
      low(i, j) = (cur + prev) * s;
      high(i, j) = (cur - prev) * s;
    }
  }
}

}  // namespace detail

/// Single-level 2-D undecimated Haar decomposition: rows filtered first,
/// then columns, no downsampling, periodic boundary extension. Odd
/// dimensions are handled by wrapping indices modulo the dimension.
inline UwtSubbands uwt_haar_level1(const ImagePlane& img) {
  const int h = img.height(), w = img.width();
  if (h < 2 || w < 2) {
    throw std::invalid_argument("uwt_haar_level1: image must be at least 2x2");
  }
  ImagePlane row_low(h, w), row_high(h, w);
  detail::haar_pass_rows(img, row_low, row_high);

  UwtSubbands out;
  out.ll = ImagePlane(h, w);
  out.lh = ImagePlane(h, w);
  out.hl = ImagePlane(h, w);
  out.hh = ImagePlane(h, w);
  detail::haar_pass_cols(row_low, out.ll, out.lh);
  detail::haar_pass_cols(row_high, out.hl, out.hh);
  return out;
}

}  // namespace sharpmark

#endif  // SHARPMARK_UWT_HPP_
