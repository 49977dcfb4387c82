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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sharpmark/uwt.hpp"
#include "testutil.hpp"

using sharpmark::ImagePlane;
using sharpmark::UwtSubbands;

TEST_CASE("constant plane decomposes to scaled ll only") {
  const double c = 0.3;
  const UwtSubbands sub = sharpmark::uwt_haar_level1(ImagePlane(4, 6, c));
  for (std::size_t k = 0; k < sub.ll.size(); ++k) {
    CHECK(sub.ll.samples()[k] == Catch::Approx(2.0 * c).margin(1e-12));
    CHECK(sub.lh.samples()[k] == 0.0);
    CHECK(sub.hl.samples()[k] == 0.0);
    CHECK(sub.hh.samples()[k] == 0.0);
  }
}

TEST_CASE("checkerboard drives the diagonal subband to unit magnitude") {
  ImagePlane board(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) board(i, j) = static_cast<double>((i + j) % 2);
  }
  const UwtSubbands sub = sharpmark::uwt_haar_level1(board);
  for (double v : sub.hh.samples()) {
    CHECK(std::abs(v) == Catch::Approx(1.0).margin(1e-12));
  }
  CHECK(testutil::max_abs_diff(sub.hh, testutil::oracle_uwt_hh(board)) == 0.0);
}

TEST_CASE("detail subbands ignore dc offsets bit-exactly on dyadic data") {
  // Multiples of 2^-10 shifted by 0.25. In hh the offset cancels inside an
  // exact dyadic subtraction before any scaling, so it must be bit-identical.
  // lh and hl run a low pass first, whose scaled output carries the offset
  // into a rounded product, so those only cancel to rounding error.
  std::mt19937 rng(51);
  ImagePlane img(8, 10);
  for (double& v : img.samples()) v = static_cast<double>(rng() % 1024) / 1024.0;
  ImagePlane shifted(8, 10);
  for (std::size_t k = 0; k < img.size(); ++k) {
    shifted.samples()[k] = img.samples()[k] + 0.25;
  }
  const UwtSubbands a = sharpmark::uwt_haar_level1(img);
  const UwtSubbands b = sharpmark::uwt_haar_level1(shifted);
  CHECK(testutil::max_abs_diff(a.lh, b.lh) < 1e-12);
  CHECK(testutil::max_abs_diff(a.hl, b.hl) < 1e-12);
  CHECK(testutil::max_abs_diff(a.hh, b.hh) == 0.0);
}

TEST_CASE("detail subbands ignore dc offsets within tolerance on random data") {
  std::mt19937 rng(52);
  const ImagePlane img = testutil::random_plane(rng, 7, 9);
  ImagePlane shifted(7, 9);
  for (std::size_t k = 0; k < img.size(); ++k) {
    shifted.samples()[k] = img.samples()[k] + 0.3127;
  }
  const UwtSubbands a = sharpmark::uwt_haar_level1(img);
  const UwtSubbands b = sharpmark::uwt_haar_level1(shifted);
  CHECK(testutil::max_abs_diff(a.lh, b.lh) < 1e-12);
  CHECK(testutil::max_abs_diff(a.hl, b.hl) < 1e-12);
  CHECK(testutil::max_abs_diff(a.hh, b.hh) < 1e-12);
}

TEST_CASE("each subband operator is linear") {
  std::mt19937 rng(53);
  const ImagePlane x = testutil::random_plane(rng, 6, 6);
  const ImagePlane y = testutil::random_plane(rng, 6, 6);
  ImagePlane combo(6, 6);
  for (std::size_t k = 0; k < combo.size(); ++k) {
    combo.samples()[k] = 1.75 * x.samples()[k] - 0.5 * y.samples()[k];
  }
  const UwtSubbands sc = sharpmark::uwt_haar_level1(combo);
  const UwtSubbands sx = sharpmark::uwt_haar_level1(x);
  const UwtSubbands sy = sharpmark::uwt_haar_level1(y);
  const auto check_linear = [](const ImagePlane& c, const ImagePlane& a, const ImagePlane& b) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      CHECK(c.samples()[k] ==
            Catch::Approx(1.75 * a.samples()[k] - 0.5 * b.samples()[k]).margin(1e-10));
    }
  };
  check_linear(sc.ll, sx.ll, sy.ll);
  check_linear(sc.lh, sx.lh, sy.lh);
  check_linear(sc.hl, sx.hl, sy.hl);
  check_linear(sc.hh, sx.hh, sy.hh);
}

TEST_CASE("diagonal subband equals the independent 1-d oracle") {
  std::mt19937 rng(54);
  for (int trial = 0; trial < 25; ++trial) {
    const int h = 2 + static_cast<int>(rng() % 9);
    const int w = 2 + static_cast<int>(rng() % 9);
    const ImagePlane img = testutil::random_plane(rng, h, w);
    const UwtSubbands sub = sharpmark::uwt_haar_level1(img);
    CHECK(testutil::max_abs_diff(sub.hh, testutil::oracle_uwt_hh(img)) < 1e-12);
  }
}

TEST_CASE("subbands keep the input shape including odd dimensions") {
  std::mt19937 rng(55);
  const ImagePlane img = testutil::random_plane(rng, 5, 7);
  const UwtSubbands sub = sharpmark::uwt_haar_level1(img);
  CHECK(sub.ll.same_shape(img));
  CHECK(sub.lh.same_shape(img));
  CHECK(sub.hl.same_shape(img));
  CHECK(sub.hh.same_shape(img));
}

TEST_CASE("undersized inputs are rejected") {
  CHECK_THROWS_AS(sharpmark::uwt_haar_level1(ImagePlane(1, 5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(sharpmark::uwt_haar_level1(ImagePlane(5, 1, 0.0)), std::invalid_argument);
  CHECK_NOTHROW(sharpmark::uwt_haar_level1(ImagePlane(2, 2, 0.0)));
}
