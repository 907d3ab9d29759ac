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

#include "wmc/mat.hpp"

#include <cmath>
#include <cstring>

namespace wmc {

Mat rotated(const Mat& m, int dr, int dc) {
  const int rows = m.rows();
  const int cols = m.cols();
  Mat out(rows, cols);
  dr = wrap_index(dr, rows);
  dc = wrap_index(dc, cols);
  for (int r = 0; r < rows; ++r) {
    const double* src = m.row(wrap_index(r - dr, rows));
    double* dst = out.row(r);
    // Destination row = source row shifted right by dc, split in two runs.
    std::memcpy(dst + dc, src, sizeof(double) * (cols - dc));
    std::memcpy(dst, src + (cols - dc), sizeof(double) * dc);
  }
  return out;
}

bool all_finite(const Mat& m) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (!a.same_size(b)) {
    throw DimensionError("max_abs_diff: size mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

double sum_squares(const Mat& m) {
  double acc = 0.0;
  for (double v : m.data()) acc += v * v;
  return acc;
}

}  // namespace wmc
