// Copyright 2026 The wmcodec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmc/wavelet.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace wmc;
using namespace wmc::testing;

TEST_CASE("constant 2x2 frame concentrates into the approximation") {
  const double v = 7.25;
  Mat frame(2, 2, v);
  const Pyramid pyr = haar_forward(frame, 1);
  CHECK(pyr.top(0, 0) == doctest::Approx(2.0 * v).epsilon(1e-14));
  CHECK(pyr.details[0].horiz(0, 0) == 0.0);
  CHECK(pyr.details[0].vert(0, 0) == 0.0);
  CHECK(pyr.details[0].diag(0, 0) == 0.0);
}

TEST_CASE("hand-computed 2x2 analysis") {
  Mat frame(2, 2);
  frame(0, 0) = 1;
  frame(0, 1) = 2;
  frame(1, 0) = 3;
  frame(1, 1) = 4;
  const SubbandSet bands = analyze_once(frame);
  CHECK(bands.approx(0, 0) == doctest::Approx(5.0));
  CHECK(bands.horiz(0, 0) == doctest::Approx(-1.0));
  CHECK(bands.vert(0, 0) == doctest::Approx(-2.0));
  CHECK(bands.diag(0, 0) == doctest::Approx(0.0));

  // And back again.
  const Mat again = synthesize_once(bands);
  CHECK(max_abs_diff(again, frame) <= 1e-14);
}

TEST_CASE("inverse of the hand-computed coefficients") {
  SubbandSet bands{Mat(1, 1, 5.0), Mat(1, 1, -1.0), Mat(1, 1, -2.0),
                   Mat(1, 1, 0.0)};
  const Mat frame = synthesize_once(bands);
  CHECK(frame(0, 0) == doctest::Approx(1.0));
  CHECK(frame(0, 1) == doctest::Approx(2.0));
  CHECK(frame(1, 0) == doctest::Approx(3.0));
  CHECK(frame(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("constant approximation synthesizes to a constant frame") {
  SubbandSet bands{Mat(1, 1, 2.0), Mat(1, 1, 0.0), Mat(1, 1, 0.0),
                   Mat(1, 1, 0.0)};
  const Mat frame = synthesize_once(bands);
  for (double v : frame.data()) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("perfect reconstruction on random frames") {
  for (int levels = 1; levels <= 4; ++levels) {
    const Mat frame = random_frame(64, 64, 1000u + levels);
    const Mat back = haar_inverse(haar_forward(frame, levels));
    CHECK(max_abs_diff(back, frame) <= 1e-10);
  }
}

TEST_CASE("orthonormal transform preserves energy") {
  const Mat frame = random_frame(64, 32, 42);
  const Pyramid pyr = haar_forward(frame, 3);
  double coeff_energy = sum_squares(pyr.top);
  for (const DetailLevel& lvl : pyr.details) {
    coeff_energy += sum_squares(lvl.horiz) + sum_squares(lvl.vert) +
                    sum_squares(lvl.diag);
  }
  const double pixel_energy = sum_squares(frame);
  CHECK(std::abs(coeff_energy - pixel_energy) <= 1e-8 * pixel_energy);
}

TEST_CASE("analysis is linear") {
  const Mat f = random_frame(32, 32, 7);
  const Mat g = random_frame(32, 32, 8);
  const double alpha = 1.375, beta = -0.625;
  Mat combo(32, 32);
  for (std::size_t i = 0; i < combo.size(); ++i) {
    combo.data()[i] = alpha * f.data()[i] + beta * g.data()[i];
  }
  const Pyramid pf = haar_forward(f, 2);
  const Pyramid pg = haar_forward(g, 2);
  const Pyramid pc = haar_forward(combo, 2);
  auto lincomb = [&](const Mat& x, const Mat& y) {
    Mat m = x;
    for (std::size_t i = 0; i < m.size(); ++i) {
      m.data()[i] = alpha * x.data()[i] + beta * y.data()[i];
    }
    return m;
  };
  for (int lvl = 0; lvl < 2; ++lvl) {
    CHECK(max_abs_diff(pc.details[lvl].horiz,
                       lincomb(pf.details[lvl].horiz, pg.details[lvl].horiz)) <=
          1e-10);
    CHECK(max_abs_diff(pc.details[lvl].diag,
                       lincomb(pf.details[lvl].diag, pg.details[lvl].diag)) <=
          1e-10);
  }
  CHECK(max_abs_diff(pc.top, lincomb(pf.top, pg.top)) <= 1e-10);
}

TEST_CASE("odd dimensions replicate-pad and crop back") {
  const Mat frame = random_frame(31, 45, 99);
  const Pyramid pyr = haar_forward(frame, 3);
  CHECK(pyr.details[0].horiz.rows() == 16);  // padded to 32x48
  CHECK(pyr.details[0].horiz.cols() == 24);
  const Mat back = haar_inverse(pyr);
  CHECK(back.rows() == 31);
  CHECK(back.cols() == 45);
  CHECK(max_abs_diff(back, frame) <= 1e-10);
}

TEST_CASE("padding disabled raises on indivisible dimensions") {
  const Mat frame = random_frame(30, 30, 5);
  CHECK_THROWS_AS(haar_forward(frame, 2, Padding::kNone), DimensionError);
  CHECK_NOTHROW(haar_forward(frame, 1, Padding::kNone));
}

TEST_CASE("inconsistent pyramid dimensions are rejected") {
  Pyramid pyr = haar_forward(random_frame(16, 16, 3), 2);
  pyr.top = Mat(3, 3);
  CHECK_THROWS_AS(haar_inverse(pyr), DimensionError);
}

TEST_CASE("upsample_zero_detail basics") {
  const Mat frame = random_frame(8, 8, 12);
  SUBCASE("h = 0 is the identity") {
    CHECK(max_abs_diff(upsample_zero_detail(frame, 0), frame) == 0.0);
  }
  SUBCASE("single sample expands to a constant block") {
    Mat one(1, 1, 2.0);
    const Mat up = upsample_zero_detail(one, 1);
    REQUIRE(up.rows() == 2);
    REQUIRE(up.cols() == 2);
    for (double v : up.data()) CHECK(v == 1.0);
  }
  SUBCASE("analysis of the upsampled frame recovers the input") {
    const Mat up = upsample_zero_detail(frame, 2);
    const Pyramid pyr = haar_forward(up, 2, Padding::kNone);
    CHECK(max_abs_diff(pyr.top, frame) <= 1e-12);
    for (const DetailLevel& lvl : pyr.details) {
      CHECK(sum_squares(lvl.horiz) <= 1e-24);
      CHECK(sum_squares(lvl.vert) <= 1e-24);
      CHECK(sum_squares(lvl.diag) <= 1e-24);
    }
  }
  SUBCASE("composition is exact") {
    const Mat once = upsample_zero_detail(upsample_zero_detail(frame, 1), 2);
    const Mat direct = upsample_zero_detail(frame, 3);
    CHECK(max_abs_diff(once, direct) == 0.0);
  }
}
