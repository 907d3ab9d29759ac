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

#ifndef WMC_MOTION_HPP_
#define WMC_MOTION_HPP_

#include <cstdint>
#include <vector>

#include "wmc/shift.hpp"
#include "wmc/wavelet.hpp"

namespace wmc {

// Motion vector in units of 1/2^h pixel, h fixed per field.
struct MotionVector {
  int dx = 0;
  int dy = 0;

  bool operator==(const MotionVector&) const = default;
};

// One vector per block of subband samples, raster order. Edge blocks
// shrink to fit when block_size does not divide the plane dimensions.
struct MotionField {
  int block_size = 8;  // subband-sample units
  int precision = 0;   // h: vectors are in 1/2^h-pel units
  int band_rows = 0;
  int band_cols = 0;
  int grid_rows = 0;
  int grid_cols = 0;
  std::vector<MotionVector> vectors;

  MotionVector& at(int br, int bc) {
    return vectors[static_cast<std::size_t>(br) * grid_cols + bc];
  }
  const MotionVector& at(int br, int bc) const {
    return vectors[static_cast<std::size_t>(br) * grid_cols + bc];
  }
  void validate() const;
};

struct SearchParams {
  int search_range = 15;  // pixels
  int precision = 2;      // 0 = full-pel, 1 = half, 2 = quarter, max 3
  int block_size = 8;     // subband samples

  void validate() const;
};

struct BlockRegion {
  int r0 = 0, c0 = 0, rows = 0, cols = 0;
};

// Raster-order block partition; last row/column blocks shrink to fit.
std::vector<BlockRegion> block_grid(int rows, int cols, int block_size);

// The candidate displacements full_search scans, raster order (dy outer,
// dx inner, both ascending), in units of 1/2^precision pixel.
std::vector<MotionVector> search_candidates(const SearchParams& params);

// ShiftSpec realizing a candidate displacement of (dx, dy) / 2^precision
// pixels.
ShiftSpec spec_for_mv(MotionVector mv, int precision);

// Sum of squared differences over all four subbands restricted to the
// block, between the target and the in-band-shifted reference.
double block_cost(const SubbandSet& ref_bands, const SubbandSet& target_bands,
                  const BlockRegion& block, MotionVector candidate,
                  int precision);

// Exhaustive scan of every candidate on the 1/2^precision grid within
// +/- search_range pixels, per block. Ties break toward the smallest
// |dx| + |dy|, then the earliest candidate in raster order. A whole-frame
// shift is computed at most once per candidate and reused across blocks.
// When `costs` is non-null it receives the winning cost per block.
MotionField full_search(const SubbandSet& ref_bands,
                        const SubbandSet& target_bands,
                        const SearchParams& params,
                        std::vector<double>* costs = nullptr);

// Conventional in-band baseline: the same exhaustive scan and cost, but
// restricted to integer subband-sample displacements (pure circular block
// moves, no subpixel operators). Vectors come back in whole-pixel units
// (always even) with the field's precision set to params.precision.
MotionField band_to_band_search(const SubbandSet& ref_bands,
                                const SubbandSet& target_bands,
                                const SearchParams& params,
                                std::vector<double>* costs = nullptr);

// Assembles the prediction: per block, copies the block region out of the
// in-band-shifted reference for that block's vector.
SubbandSet compensate(const SubbandSet& ref_bands, const MotionField& field);

// Elementwise target - predicted.
SubbandSet subtract_bands(const SubbandSet& target, const SubbandSet& predicted);

// Elementwise predicted + residual; exact inverse of subtract_bands.
SubbandSet add_bands(const SubbandSet& predicted, const SubbandSet& residual);

double bands_sum_squares(const SubbandSet& bands);

}  // namespace wmc

#endif  // WMC_MOTION_HPP_
