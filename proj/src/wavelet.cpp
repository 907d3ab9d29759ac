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

#include <cmath>
#include <string>

namespace wmc {

void SubbandSet::validate() const {
  if (approx.empty()) {
    throw DimensionError("subband set is empty");
  }
  if (!approx.same_size(horiz) || !approx.same_size(vert) ||
      !approx.same_size(diag)) {
    throw DimensionError("subband planes have inconsistent dimensions");
  }
}

void Pyramid::validate() const {
  if (details.empty()) {
    throw DimensionError("pyramid has no levels");
  }
  int r = details.front().horiz.rows();
  int c = details.front().horiz.cols();
  for (const DetailLevel& lvl : details) {
    if (lvl.horiz.rows() != r || lvl.horiz.cols() != c ||
        !lvl.horiz.same_size(lvl.vert) || !lvl.horiz.same_size(lvl.diag)) {
      throw DimensionError("pyramid detail planes have inconsistent dimensions");
    }
    if (r % 2 != 0 && &lvl != &details.back()) {
      throw DimensionError("pyramid level dimensions must halve");
    }
    if (&lvl != &details.back()) {
      r /= 2;
      c /= 2;
    }
  }
  if (top.rows() != r || top.cols() != c) {
    throw DimensionError("pyramid approximation does not match deepest level");
  }
}

SubbandSet analyze_once(const Mat& frame) {
  const int rows = frame.rows();
  const int cols = frame.cols();
  if (rows % 2 != 0 || cols % 2 != 0) {
    throw DimensionError("analysis requires even dimensions, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  const int m = rows / 2;
  const int n = cols / 2;
  SubbandSet out{Mat(m, n), Mat(m, n), Mat(m, n), Mat(m, n)};
  for (int r = 0; r < m; ++r) {
    const double* top_row = frame.row(2 * r);
    const double* bot_row = frame.row(2 * r + 1);
    double* A = out.approx.row(r);
    double* a = out.horiz.row(r);
    double* b = out.vert.row(r);
    double* c = out.diag.row(r);
    for (int j = 0; j < n; ++j) {
      const double p00 = top_row[2 * j];
      const double p01 = top_row[2 * j + 1];
      const double p10 = bot_row[2 * j];
      const double p11 = bot_row[2 * j + 1];
      A[j] = (p00 + p01 + p10 + p11) * 0.5;
      a[j] = (p00 - p01 + p10 - p11) * 0.5;
      b[j] = (p00 + p01 - p10 - p11) * 0.5;
      c[j] = (p00 - p01 - p10 + p11) * 0.5;
    }
  }
  return out;
}

Mat synthesize_once(const SubbandSet& bands) {
  bands.validate();
  const int m = bands.rows();
  const int n = bands.cols();
  Mat out(2 * m, 2 * n);
  for (int r = 0; r < m; ++r) {
    const double* A = bands.approx.row(r);
    const double* a = bands.horiz.row(r);
    const double* b = bands.vert.row(r);
    const double* c = bands.diag.row(r);
    double* top_row = out.row(2 * r);
    double* bot_row = out.row(2 * r + 1);
    for (int j = 0; j < n; ++j) {
      top_row[2 * j] = (A[j] + a[j] + b[j] + c[j]) * 0.5;
      top_row[2 * j + 1] = (A[j] - a[j] + b[j] - c[j]) * 0.5;
      bot_row[2 * j] = (A[j] + a[j] - b[j] - c[j]) * 0.5;
      bot_row[2 * j + 1] = (A[j] - a[j] - b[j] + c[j]) * 0.5;
    }
  }
  return out;
}

Mat pad_to_multiple(const Mat& frame, int multiple) {
  if (multiple <= 0) {
    throw UsageError("pad multiple must be positive");
  }
  const int rows = frame.rows();
  const int cols = frame.cols();
  const int prows = ((rows + multiple - 1) / multiple) * multiple;
  const int pcols = ((cols + multiple - 1) / multiple) * multiple;
  if (prows == rows && pcols == cols) return frame;
  Mat out(prows, pcols);
  for (int r = 0; r < prows; ++r) {
    const double* src = frame.row(std::min(r, rows - 1));
    double* dst = out.row(r);
    for (int c = 0; c < pcols; ++c) {
      dst[c] = src[std::min(c, cols - 1)];
    }
  }
  return out;
}

Pyramid haar_forward(const Mat& frame, int levels, Padding padding) {
  if (levels < 1) {
    throw UsageError("decomposition depth must be at least 1");
  }
  if (frame.empty()) {
    throw DimensionError("cannot transform an empty frame");
  }
  const int unit = 1 << levels;
  Mat work = frame;
  if (frame.rows() % unit != 0 || frame.cols() % unit != 0) {
    if (padding == Padding::kNone) {
      throw DimensionError("frame dimensions " + std::to_string(frame.rows()) +
                           "x" + std::to_string(frame.cols()) +
                           " not divisible by " + std::to_string(unit) +
                           " and padding is disabled");
    }
    work = pad_to_multiple(frame, unit);
  }

  Pyramid pyr;
  pyr.orig_rows = frame.rows();
  pyr.orig_cols = frame.cols();
  pyr.details.reserve(levels);
  for (int lvl = 0; lvl < levels; ++lvl) {
    SubbandSet bands = analyze_once(work);
    pyr.details.push_back(
        DetailLevel{std::move(bands.horiz), std::move(bands.vert),
                    std::move(bands.diag)});
    work = std::move(bands.approx);
  }
  pyr.top = std::move(work);
  return pyr;
}

Mat haar_inverse(const Pyramid& pyramid) {
  pyramid.validate();
  Mat approx = pyramid.top;
  for (int lvl = pyramid.levels() - 1; lvl >= 0; --lvl) {
    const DetailLevel& d = pyramid.details[lvl];
    if (!approx.same_size(d.horiz)) {
      throw DimensionError("pyramid approximation/detail size mismatch");
    }
    approx = synthesize_once(SubbandSet{approx, d.horiz, d.vert, d.diag});
  }
  if (pyramid.orig_rows == 0 ||
      (approx.rows() == pyramid.orig_rows && approx.cols() == pyramid.orig_cols)) {
    return approx;
  }
  Mat out(pyramid.orig_rows, pyramid.orig_cols);
  for (int r = 0; r < out.rows(); ++r) {
    const double* src = approx.row(r);
    double* dst = out.row(r);
    for (int c = 0; c < out.cols(); ++c) dst[c] = src[c];
  }
  return out;
}

Mat upsample_zero_detail(const Mat& frame, int h) {
  if (h < 0) {
    throw UsageError("upsampling depth must be nonnegative");
  }
  if (h == 0) return frame;
  const int factor = 1 << h;
  // Zero details force each synthesized 2^h block constant at v / 2^h.
  const double gain = std::ldexp(1.0, -h);
  Mat out(frame.rows() * factor, frame.cols() * factor);
  for (int r = 0; r < out.rows(); ++r) {
    const double* src = frame.row(r >> h);
    double* dst = out.row(r);
    for (int c = 0; c < out.cols(); ++c) {
      dst[c] = src[c >> h] * gain;
    }
  }
  return out;
}

}  // namespace wmc
