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
//
// Global thresholding + canonical Huffman coding of coefficient planes.
// Zero runs and nonzero magnitudes are bucketed into a 32-token alphabet
// (16 run-length classes, 16 magnitude classes) with raw extra bits; one
// code table is built per payload from the token histogram and serialized
// with it.

#ifndef WMC_ENTROPY_HPP_
#define WMC_ENTROPY_HPP_

#include <cstdint>
#include <vector>

#include "wmc/mat.hpp"

namespace wmc {

// Integer coefficient plane. Stored values are round(x * scale) for
// surviving coefficients; dequantization divides the scale back out.
// Values are clamped to the signed 16-bit range; clamps are counted,
// not fatal.
struct QuantizedPlane {
  int rows = 0;
  int cols = 0;
  double scale = 1.0;
  std::vector<std::int16_t> values;
  int saturated = 0;

  std::size_t count() const { return values.size(); }
};

// Hard threshold: |x| <= threshold maps to 0; survivors are scaled and
// rounded to the nearest integer (ties away from zero). threshold == 0
// with scale == 1 is pure rounding.
QuantizedPlane quantize(const Mat& plane, double threshold,
                        double scale = 1.0);

Mat dequantize(const QuantizedPlane& plane);

// Canonical Huffman code lengths for the given symbol frequencies
// (0 for unused symbols). Deterministic for identical input.
std::vector<int> huffman_code_lengths(const std::vector<std::uint64_t>& freq);

std::vector<std::uint8_t> entropy_encode(
    const std::vector<QuantizedPlane>& planes);

// Exact inverse of entropy_encode. Throws MalformedTableError for an
// invalid code table and TruncatedStreamError when the payload ends
// early; other corruption raises StreamError.
std::vector<QuantizedPlane> entropy_decode(const std::uint8_t* data,
                                           std::size_t size);
std::vector<QuantizedPlane> entropy_decode(
    const std::vector<std::uint8_t>& bytes);

}  // namespace wmc

#endif  // WMC_ENTROPY_HPP_
