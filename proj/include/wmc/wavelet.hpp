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

#ifndef WMC_WAVELET_HPP_
#define WMC_WAVELET_HPP_

#include <vector>

#include "wmc/mat.hpp"

namespace wmc {

// One decomposition level's four coefficient planes: approximation plus
// horizontal, vertical, and diagonal detail. All planes share dimensions.
struct SubbandSet {
  Mat approx;  // A
  Mat horiz;   // a
  Mat vert;    // b
  Mat diag;    // c

  int rows() const { return approx.rows(); }
  int cols() const { return approx.cols(); }
  void validate() const;
};

struct DetailLevel {
  Mat horiz, vert, diag;
};

// Multi-level decomposition. details[k] holds the level k+1 detail planes
// (level 1 = full-resolution details); top is the coarsest approximation.
// orig_rows/orig_cols remember the pre-padding frame size so synthesis can
// crop back.
struct Pyramid {
  std::vector<DetailLevel> details;
  Mat top;
  int orig_rows = 0;
  int orig_cols = 0;

  int levels() const { return static_cast<int>(details.size()); }
  void validate() const;
};

enum class Padding { kReplicate, kNone };

// Single-level orthonormal 2-D Haar analysis. Per 2x2 input block
// p00 p01 / p10 p11:
//   A = (p00 + p01 + p10 + p11) / 2
//   a = (p00 - p01 + p10 - p11) / 2
//   b = (p00 + p01 - p10 - p11) / 2
//   c = (p00 - p01 - p10 + p11) / 2
// Dimensions must be even.
SubbandSet analyze_once(const Mat& frame);

// Exact inverse of analyze_once.
Mat synthesize_once(const SubbandSet& bands);

// Multi-level analysis; recursion applies analyze_once to the running
// approximation. With Padding::kReplicate, odd inputs are edge-padded to
// the next multiple of 2^levels and the original size is recorded;
// with Padding::kNone a non-divisible input raises DimensionError.
Pyramid haar_forward(const Mat& frame, int levels,
                     Padding padding = Padding::kReplicate);

// Full synthesis, cropped back to the recorded original size.
Mat haar_inverse(const Pyramid& pyramid);

// Expands the frame by 2^h per axis such that the h-level analysis of the
// result has the input as its approximation and all detail planes zero.
// Under the orthonormal convention each source value v becomes a
// 2^h x 2^h block of value v / 2^h.
Mat upsample_zero_detail(const Mat& frame, int h);

// Replicate-pads the right and bottom edges up to the next multiple.
Mat pad_to_multiple(const Mat& frame, int multiple);

}  // namespace wmc

#endif  // WMC_WAVELET_HPP_
