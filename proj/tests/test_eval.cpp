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

#include "wmc/eval.hpp"

#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "wmc/motion.hpp"

using namespace wmc;
using namespace wmc::testing;

TEST_CASE("psnr corner cases") {
  const Mat a = random_integer_frame(16, 16, 4000);
  CHECK(std::isinf(psnr(a, a)));

  Mat zeros(8, 8, 0.0);
  Mat full(8, 8, 255.0);
  CHECK(psnr(zeros, full) == doctest::Approx(0.0));

  // MSE of exactly 1: one-off error everywhere.
  Mat off = zeros;
  for (double& v : off.data()) v += 1.0;
  CHECK(psnr(zeros, off) == doctest::Approx(48.1308).epsilon(1e-4));

  CHECK_THROWS_AS(psnr(zeros, Mat(4, 4)), DimensionError);
}

TEST_CASE("band_to_band_search") {
  const Mat frame = random_frame(64, 64, 4100);
  const SubbandSet bands = analyze_once(frame);

  SUBCASE("identical frames give the zero field") {
    const MotionField field =
        band_to_band_search(bands, bands, SearchParams{4, 2, 8});
    for (const MotionVector& mv : field.vectors) {
      CHECK(mv == MotionVector{0, 0});
    }
  }
  SUBCASE("a 2-pixel move is one subband sample for every block") {
    const SubbandSet target = analyze_once(rotated(frame, 0, 2));
    const MotionField field =
        band_to_band_search(bands, target, SearchParams{4, 2, 8});
    for (const MotionVector& mv : field.vectors) {
      CHECK(mv == MotionVector{2 << 2, 0});  // 2 px in quarter-pel units
    }
  }
  SUBCASE("subpixel motion favors the in-band matcher") {
    const Mat target_frame = oracle_shift_frame(frame, 5, 0, 2);  // 1.25 px
    const SubbandSet target = analyze_once(target_frame);
    const SearchParams params{2, 2, 8};
    const SubbandSet inband_residual = subtract_bands(
        target, compensate(bands, full_search(bands, target, params)));
    const SubbandSet band_residual = subtract_bands(
        target, compensate(bands, band_to_band_search(bands, target, params)));
    CHECK(bands_sum_squares(inband_residual) <
          bands_sum_squares(band_residual));
  }
  SUBCASE("per-block cost never loses to the baseline") {
    // The subpixel grid is a superset of the integer-sample grid, so the
    // winning cost can only improve, block by block.
    const SubbandSet target =
        analyze_once(oracle_shift_frame(frame, -7, 3, 2));
    const SearchParams params{2, 2, 8};
    std::vector<double> inband_costs, band_costs;
    full_search(bands, target, params, &inband_costs);
    band_to_band_search(bands, target, params, &band_costs);
    REQUIRE(inband_costs.size() == band_costs.size());
    for (std::size_t b = 0; b < inband_costs.size(); ++b) {
      CHECK(inband_costs[b] <= band_costs[b]);
    }
  }
}

TEST_CASE("rd_sweep") {
  CodecConfig cfg;
  cfg.block_size = 8;
  cfg.precision = 2;
  cfg.search_range = 2;

  SUBCASE("a static pair at threshold 0 is near-lossless") {
    const Mat frame = random_integer_frame(64, 64, 4200);
    const std::vector<Frame> frames{frame, frame};
    const std::vector<RateDistortionPoint> points =
        rd_sweep(frames, cfg, {0.0});
    REQUIRE(points.size() == 1);
    CHECK(points[0].psnr_mean >= 60.0);
    CHECK(points[0].bpp ==
          doctest::Approx(double(points[0].bits_total) / (64.0 * 64.0 * 2)));
  }
  SUBCASE("rate falls as the threshold rises") {
    const Mat base = smooth_frame(64, 64);
    std::vector<Frame> frames;
    for (int t = 0; t < 4; ++t) {
      Mat f = oracle_shift_frame(base, 5 * t, -3 * t, 2);
      const Mat noise = random_frame(64, 64, 4300 + t, -6.0, 6.0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f.data()[i] += noise.data()[i];
      }
      frames.push_back(std::move(f));
    }
    const std::vector<RateDistortionPoint> points =
        rd_sweep(frames, cfg, {16.0, 0.0, 4.0, 1.0});  // given out of order
    REQUIRE(points.size() == 4);
    for (std::size_t i = 1; i < points.size(); ++i) {
      CHECK(points[i].threshold > points[i - 1].threshold);  // sorted rows
      CHECK(points[i].bpp <= points[i - 1].bpp);
      CHECK(points[i].bpp_err <= points[i - 1].bpp_err);
    }
  }
  SUBCASE("empty threshold list is a usage error") {
    const std::vector<Frame> frames{Mat(16, 16, 1.0), Mat(16, 16, 2.0)};
    CHECK_THROWS_AS(rd_sweep(frames, cfg, {}), UsageError);
  }
  SUBCASE("CSV output is deterministic") {
    const Mat frame = random_integer_frame(32, 32, 4400);
    const std::vector<Frame> frames{frame, rotated(frame, 1, 2)};
    const std::vector<RateDistortionPoint> points =
        rd_sweep(frames, cfg, {0.0, 2.0});
    std::ostringstream a, b;
    write_rd_csv(a, points);
    write_rd_csv(b, points);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("method,threshold,bits,bpp,bpp_err,psnr_mean", 0) ==
          0);
  }
}

TEST_CASE("psnr_at_bpp interpolates inside the curve only") {
  std::vector<RateDistortionPoint> curve(3);
  curve[0].bpp = 1.0;
  curve[0].psnr_mean = 40.0;
  curve[1].bpp = 2.0;
  curve[1].psnr_mean = 44.0;
  curve[2].bpp = 4.0;
  curve[2].psnr_mean = 46.0;
  double out = 0.0;
  REQUIRE(psnr_at_bpp(curve, 1.5, &out));
  CHECK(out == doctest::Approx(42.0));
  REQUIRE(psnr_at_bpp(curve, 3.0, &out));
  CHECK(out == doctest::Approx(45.0));
  CHECK_FALSE(psnr_at_bpp(curve, 0.5, &out));
  CHECK_FALSE(psnr_at_bpp(curve, 5.0, &out));
}
