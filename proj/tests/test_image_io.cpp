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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sharpmark/image.hpp"
#include "sharpmark/image_io.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using sharpmark::ImageKind;
using sharpmark::ImagePlane;
using sharpmark::InputImage;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "sharpmark_io_tests";
  fs::create_directories(dir);
  return dir;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("pgm bytes scale by the header maxval") {
  const fs::path p = scratch_dir() / "tiny.pgm";
  write_bytes(p, std::string("P5\n2 2\n255\n") + '\x00' + '\x80' + '\xff' + '\x40');
  const InputImage img = sharpmark::load_image(p);
  REQUIRE(img.kind == ImageKind::Gray);
  CHECK(img.planes[0](0, 0) == 0.0);
  CHECK(img.planes[0](0, 1) == 128.0 / 255.0);
  CHECK(img.planes[0](1, 0) == 1.0);
  CHECK(img.planes[0](1, 1) == 64.0 / 255.0);
}

TEST_CASE("ppm single red pixel") {
  const fs::path p = scratch_dir() / "red.ppm";
  write_bytes(p, std::string("P6\n1 1\n255\n") + '\xff' + '\x00' + '\x00');
  const InputImage img = sharpmark::load_image(p);
  REQUIRE(img.kind == ImageKind::Rgb);
  CHECK(img.planes[0](0, 0) == 1.0);
  CHECK(img.planes[1](0, 0) == 0.0);
  CHECK(img.planes[2](0, 0) == 0.0);
}

TEST_CASE("16-bit pnm values are big-endian and scale to one") {
  const fs::path p = scratch_dir() / "deep.pgm";
  // 65535 then 32768, as two big-endian 16-bit words.
  write_bytes(p, std::string("P5\n2 1\n65535\n") + '\xff' + '\xff' + '\x80' + '\x00');
  const InputImage img = sharpmark::load_image(p);
  CHECK(img.planes[0](0, 0) == 1.0);
  CHECK(img.planes[0](0, 1) == 32768.0 / 65535.0);
}

TEST_CASE("pnm headers accept comments and odd maxvals") {
  const fs::path p = scratch_dir() / "cmt.pgm";
  write_bytes(p, std::string("P5 # format\n# a comment line\n 2 # width\n1\n1000\n") +
                     '\x01' + '\xf4' + '\x00' + '\x00');
  const InputImage img = sharpmark::load_image(p);  // 0x01f4 = 500
  CHECK(img.planes[0](0, 0) == 500.0 / 1000.0);
  CHECK(img.planes[0](0, 1) == 0.0);
}

TEST_CASE("malformed rasters are rejected with context") {
  const fs::path dir = scratch_dir();
  write_bytes(dir / "trunc.pgm", "P5\n4 4\n255\nxy");
  CHECK_THROWS_WITH(sharpmark::load_image(dir / "trunc.pgm"),
                    Catch::Matchers::ContainsSubstring("truncated"));
  write_bytes(dir / "ascii.pgm", "P2\n1 1\n255\n7\n");  // ASCII PNM is out of scope
  CHECK_THROWS_WITH(sharpmark::load_image(dir / "ascii.pgm"),
                    Catch::Matchers::ContainsSubstring("unsupported image format"));
  write_bytes(dir / "maxval.pgm", std::string("P5\n1 1\n70000\n") + '\x00');
  CHECK_THROWS(sharpmark::load_image(dir / "maxval.pgm"));
  write_bytes(dir / "garbage.bin", "not an image at all");
  CHECK_THROWS_WITH(sharpmark::load_image(dir / "garbage.bin"),
                    Catch::Matchers::ContainsSubstring("unsupported image format"));
  CHECK_THROWS_WITH(sharpmark::load_image(dir / "does_not_exist.png"),
                    Catch::Matchers::ContainsSubstring("cannot open"));
}

TEST_CASE("png corpus images decode with expected shape and range") {
  const InputImage img = sharpmark::load_image(testutil::data_dir() / "astronaut.png");
  REQUIRE(img.kind == ImageKind::Rgb);
  CHECK(img.height() == 512);
  CHECK(img.width() == 512);
  for (const ImagePlane& plane : img.planes) {
    CHECK(sharpmark::min_value(plane) >= 0.0);
    CHECK(sharpmark::max_value(plane) <= 1.0);
  }
  const InputImage gray = sharpmark::load_image(testutil::data_dir() / "camera.png");
  CHECK(gray.kind == ImageKind::Gray);
  CHECK(gray.height() == 512);
}

TEST_CASE("16-bit png spans the full unit range") {
  const InputImage img = sharpmark::load_image(testutil::data_dir() / "gradient16.png");
  REQUIRE(img.kind == ImageKind::Gray);
  const ImagePlane& p = img.planes[0];
  CHECK(p.height() == 48);
  CHECK(p.width() == 64);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(47, 63) == 1.0);  // last sample is 65535 -> exactly 1
  // Row-major gradient: strictly nondecreasing scan order.
  for (std::size_t k = 1; k < p.size(); ++k) {
    CHECK(p.samples()[k] >= p.samples()[k - 1]);
  }
  // 16-bit depth means steps finer than 1/255 must survive.
  CHECK(p.samples()[1] > 0.0);
  CHECK(p.samples()[1] < 1.0 / 255.0);
}

TEST_CASE("paletted png expands to rgb") {
  const InputImage img = sharpmark::load_image(testutil::data_dir() / "palette.png");
  REQUIRE(img.kind == ImageKind::Rgb);
  CHECK(img.planes[0](0, 0) == 1.0);   // red corner
  CHECK(img.planes[1](0, 2) == 1.0);   // green corner
  CHECK(img.planes[2](2, 0) == 1.0);   // blue corner
  CHECK(img.planes[0](3, 3) == 128.0 / 255.0);
  CHECK(img.planes[1](3, 3) == 64.0 / 255.0);
  CHECK(img.planes[2](3, 3) == 32.0 / 255.0);
}

TEST_CASE("alpha channels are stripped") {
  const InputImage img = sharpmark::load_image(testutil::data_dir() / "rgba.png");
  REQUIRE(img.kind == ImageKind::Rgb);
  REQUIRE(img.planes.size() == 3);
  CHECK(img.planes[0](0, 0) == 1.0);
  CHECK(img.planes[1](0, 1) == 1.0);
  CHECK(img.planes[2](1, 0) == 1.0);
  CHECK(img.planes[0](1, 1) == 1.0);  // white pixel regardless of its alpha
}

TEST_CASE("pgm write/reload round-trips bit-exactly") {
  const fs::path dir = scratch_dir();
  std::mt19937 rng(21);
  ImagePlane p(9, 7);
  std::uniform_int_distribution<int> dist(0, 255);
  for (double& v : p.samples()) v = dist(rng) / 255.0;

  sharpmark::write_pgm(p, dir / "roundtrip8.pgm", 255);
  const InputImage back = sharpmark::load_image(dir / "roundtrip8.pgm");
  CHECK(testutil::max_abs_diff(p, back.planes[0]) == 0.0);

  ImagePlane q(4, 5);
  std::uniform_int_distribution<int> wide(0, 65535);
  for (double& v : q.samples()) v = wide(rng) / 65535.0;
  sharpmark::write_pgm(q, dir / "roundtrip16.pgm", 65535);
  const InputImage back16 = sharpmark::load_image(dir / "roundtrip16.pgm");
  CHECK(testutil::max_abs_diff(q, back16.planes[0]) == 0.0);
}

TEST_CASE("ppm write/reload round-trips bit-exactly") {
  const fs::path dir = scratch_dir();
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<ImagePlane> planes;
  for (int c = 0; c < 3; ++c) {
    ImagePlane p(5, 6);
    for (double& v : p.samples()) v = dist(rng) / 255.0;
    planes.push_back(std::move(p));
  }
  const InputImage img = InputImage::rgb(planes[0], planes[1], planes[2]);
  sharpmark::write_ppm(img, dir / "roundtrip.ppm");
  const InputImage back = sharpmark::load_image(dir / "roundtrip.ppm");
  REQUIRE(back.kind == ImageKind::Rgb);
  for (int c = 0; c < 3; ++c) {
    CHECK(testutil::max_abs_diff(img.planes[c], back.planes[c]) == 0.0);
  }
}

TEST_CASE("write_pgm clamps out-of-range samples") {
  const fs::path p = scratch_dir() / "clamp.pgm";
  sharpmark::write_pgm(testutil::make_plane(1, 3, {-0.5, 0.5, 1.7}), p);
  const InputImage back = sharpmark::load_image(p);
  CHECK(back.planes[0](0, 0) == 0.0);
  CHECK(back.planes[0](0, 1) == 128.0 / 255.0);  // round(0.5*255) = 128
  CHECK(back.planes[0](0, 2) == 1.0);
}

TEST_CASE("normalized pgm follows the min-max rule") {
  const fs::path dir = scratch_dir();
  sharpmark::write_pgm_normalized(testutil::make_plane(1, 4, {2.0, 3.0, 2.5, 2.0}),
                                  dir / "norm.pgm");
  const std::string bytes = read_bytes(dir / "norm.pgm");
  const std::string raster = bytes.substr(bytes.size() - 4);
  CHECK(static_cast<unsigned char>(raster[0]) == 0);
  CHECK(static_cast<unsigned char>(raster[1]) == 255);
  CHECK(static_cast<unsigned char>(raster[2]) == 128);  // round(255*0.5)
  CHECK(static_cast<unsigned char>(raster[3]) == 0);

  sharpmark::write_pgm_normalized(ImagePlane(3, 3, 42.0), dir / "flat.pgm");
  const std::string flat = read_bytes(dir / "flat.pgm");
  for (std::size_t k = flat.size() - 9; k < flat.size(); ++k) {
    CHECK(flat[k] == '\0');  // all-equal plane maps to 0
  }
}

TEST_CASE("png and pgm encodings of the same data agree") {
  const fs::path dir = scratch_dir();
  const InputImage cam = sharpmark::load_image(testutil::data_dir() / "camera.png");
  sharpmark::write_pgm(cam.planes[0], dir / "camera_copy.pgm", 255);
  const InputImage back = sharpmark::load_image(dir / "camera_copy.pgm");
  CHECK(testutil::max_abs_diff(cam.planes[0], back.planes[0]) == 0.0);
}
