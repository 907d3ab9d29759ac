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

#include "wmc/motion.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace wmc;
using namespace wmc::testing;

TEST_CASE("block_cost basics") {
  const Mat frame = random_frame(32, 32, 101);
  const SubbandSet bands = analyze_once(frame);
  const BlockRegion block{4, 4, 8, 8};

  SUBCASE("identical bands at zero displacement cost nothing") {
    CHECK(block_cost(bands, bands, block, MotionVector{0, 0}, 2) == 0.0);
  }
  SUBCASE("an exact even shift is recovered at negligible cost") {
    const SubbandSet target = analyze_once(rotated(frame, 0, 2));
    const double cost =
        block_cost(bands, target, block, MotionVector{2 << 2, 0}, 2);
    CHECK(cost <= 1e-16 * 4 * 8 * 8);
  }
  SUBCASE("zero reference leaves the target energy") {
    SubbandSet zero{Mat(16, 16), Mat(16, 16), Mat(16, 16), Mat(16, 16)};
    const SubbandSet target = analyze_once(frame);
    double energy = 0.0;
    const Mat* planes[4] = {&target.approx, &target.horiz, &target.vert,
                            &target.diag};
    for (const Mat* p : planes) {
      for (int r = block.r0; r < block.r0 + block.rows; ++r) {
        for (int c = block.c0; c < block.c0 + block.cols; ++c) {
          energy += (*p)(r, c) * (*p)(r, c);
        }
      }
    }
    CHECK(block_cost(zero, target, block, MotionVector{0, 0}, 2) ==
          doctest::Approx(energy).epsilon(1e-12));
  }
  SUBCASE("out-of-bounds block is rejected") {
    CHECK_THROWS_AS(
        block_cost(bands, bands, BlockRegion{12, 12, 8, 8}, MotionVector{}, 2),
        DimensionError);
  }
}

TEST_CASE("search window arithmetic") {
  CHECK(search_candidates(SearchParams{1, 0, 8}).size() == 9);
  CHECK(search_candidates(SearchParams{1, 1, 8}).size() == 25);
  CHECK(search_candidates(SearchParams{2, 2, 8}).size() == 17 * 17);
}

TEST_CASE("full_search on identical frames returns the zero field") {
  const SubbandSet bands = analyze_once(random_frame(32, 32, 102));
  const MotionField field = full_search(bands, bands, SearchParams{2, 1, 8});
  for (const MotionVector& mv : field.vectors) {
    CHECK(mv == MotionVector{0, 0});
  }
}

TEST_CASE("full_search recovers known global subpixel motion") {
  const Mat ref = random_frame(128, 128, 103);
  const Mat target = oracle_shift_frame(ref, 5, -3, 2);  // (1.25, -0.75) px
  const SubbandSet ref_bands = analyze_once(ref);
  const SubbandSet target_bands = analyze_once(target);
  std::vector<double> costs;
  const MotionField field =
      full_search(ref_bands, target_bands, SearchParams{2, 2, 8}, &costs);

  int interior = 0;
  int exact = 0;
  for (int br = 1; br + 1 < field.grid_rows; ++br) {
    for (int bc = 1; bc + 1 < field.grid_cols; ++bc) {
      ++interior;
      if (field.at(br, bc) == MotionVector{5, -3}) ++exact;
    }
  }
  CHECK(interior > 0);
  CHECK(exact >= (interior * 95 + 99) / 100);

  SUBCASE("compensation reproduces the target almost exactly") {
    const SubbandSet predicted = compensate(ref_bands, field);
    const SubbandSet residual = subtract_bands(target_bands, predicted);
    // Interior exactness: total residual energy is tiny relative to the
    // target because the pair was built by the same periodic model.
    CHECK(bands_sum_squares(residual) <=
          1e-12 * bands_sum_squares(target_bands));
  }
  SUBCASE("winning costs agree with an independent block_cost pass") {
    const std::vector<BlockRegion> blocks =
        block_grid(field.band_rows, field.band_cols, field.block_size);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      CHECK(costs[b] == block_cost(ref_bands, target_bands, blocks[b],
                                   field.vectors[b], field.precision));
    }
  }
}

TEST_CASE("full_search beats no candidate on the grid") {
  // Exhaustive re-scan on a small case.
  const Mat ref = random_frame(16, 16, 104);
  const Mat target = random_frame(16, 16, 105);
  const SubbandSet ref_bands = analyze_once(ref);
  const SubbandSet target_bands = analyze_once(target);
  const SearchParams params{1, 1, 4};
  std::vector<double> costs;
  const MotionField field =
      full_search(ref_bands, target_bands, params, &costs);
  const std::vector<BlockRegion> blocks = block_grid(8, 8, 4);
  for (const MotionVector& cand : search_candidates(params)) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      CHECK(costs[b] <= block_cost(ref_bands, target_bands, blocks[b], cand,
                                   params.precision));
    }
  }
}

TEST_CASE("residual energy never exceeds the unpredicted error") {
  for (std::uint32_t seed = 200; seed < 204; ++seed) {
    const SubbandSet ref = analyze_once(random_frame(32, 32, seed));
    const SubbandSet target = analyze_once(random_frame(32, 32, seed + 50));
    const MotionField field = full_search(ref, target, SearchParams{2, 1, 8});
    const SubbandSet residual =
        subtract_bands(target, compensate(ref, field));
    const SubbandSet naive = subtract_bands(target, ref);
    CHECK(bands_sum_squares(residual) <=
          bands_sum_squares(naive) * (1.0 + 1e-12));
  }
}

TEST_CASE("full_search is deterministic") {
  const SubbandSet ref = analyze_once(random_frame(32, 32, 300));
  const SubbandSet target = analyze_once(random_frame(32, 32, 301));
  const SearchParams params{2, 2, 8};
  const MotionField a = full_search(ref, target, params);
  const MotionField b = full_search(ref, target, params);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("compensate") {
  const Mat frame = random_frame(32, 32, 400);
  const SubbandSet bands = analyze_once(frame);

  SUBCASE("zero field reproduces the reference") {
    MotionField field;
    field.block_size = 8;
    field.precision = 2;
    field.band_rows = 16;
    field.band_cols = 16;
    field.grid_rows = 2;
    field.grid_cols = 2;
    field.vectors.assign(4, MotionVector{0, 0});
    CHECK(bands_max_diff(compensate(bands, field), bands) == 0.0);
  }
  SUBCASE("single block equals the whole-frame shift") {
    MotionField field;
    field.block_size = 16;
    field.precision = 0;
    field.band_rows = 16;
    field.band_cols = 16;
    field.grid_rows = 1;
    field.grid_cols = 1;
    field.vectors.assign(1, MotionVector{2, 0});
    const SubbandSet via_block = compensate(bands, field);
    const SubbandSet whole =
        apply_inband_shift(bands, spec_for_mv(MotionVector{2, 0}, 0));
    CHECK(bands_max_diff(via_block, whole) == 0.0);
  }
  SUBCASE("geometry mismatch is rejected") {
    MotionField field;
    field.block_size = 8;
    field.precision = 0;
    field.band_rows = 8;
    field.band_cols = 8;
    field.grid_rows = 1;
    field.grid_cols = 1;
    field.vectors.assign(1, MotionVector{0, 0});
    CHECK_THROWS_AS(compensate(bands, field), DimensionError);
  }
}

TEST_CASE("residual round trip is exact") {
  const SubbandSet target = analyze_once(random_frame(32, 32, 500));
  const SubbandSet predicted = analyze_once(random_frame(32, 32, 501));
  const SubbandSet residual = subtract_bands(target, predicted);
  const SubbandSet back = add_bands(predicted, residual);
  CHECK(bands_max_diff(back, target) <= 1e-15 * 255);

  SUBCASE("matched input leaves a zero residual") {
    const SubbandSet zero = subtract_bands(target, target);
    CHECK(bands_sum_squares(zero) == 0.0);
  }
}

TEST_CASE("shrunken edge blocks cover non-divisible planes") {
  const std::vector<BlockRegion> blocks = block_grid(20, 12, 8);
  REQUIRE(blocks.size() == 6);  // 3 x 2 grid
  CHECK(blocks.back().rows == 4);
  CHECK(blocks.back().cols == 4);
  int covered = 0;
  for (const BlockRegion& b : blocks) covered += b.rows * b.cols;
  CHECK(covered == 20 * 12);
}
