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

#ifndef WMC_MAT_HPP_
#define WMC_MAT_HPP_

#include <cassert>
#include <cstddef>
#include <vector>

#include "wmc/error.hpp"

namespace wmc {

// Row-major matrix of doubles. Frames and subband planes are both Mats;
// a frame's height is rows() and its width is cols().
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows <= 0 || cols <= 0) {
      throw DimensionError("matrix dimensions must be positive");
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  double* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const double* row(int r) const {
    return data_.data() + static_cast<std::size_t>(r) * cols_;
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_size(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Frames are plain matrices of luminance values.
using Frame = Mat;

// Wraps v into [0, n). Works for any v, including large negatives.
inline int wrap_index(int v, int n) {
  int m = v % n;
  return m < 0 ? m + n : m;
}

// Periodic translation: content moves down by dr rows and right by dc
// columns, with wraparound.
Mat rotated(const Mat& m, int dr, int dc);

bool all_finite(const Mat& m);

double max_abs_diff(const Mat& a, const Mat& b);
double sum_squares(const Mat& m);

}  // namespace wmc

#endif  // WMC_MAT_HPP_
