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

#include "wmc/shift.hpp"

#include <cmath>
#include <string>

namespace wmc {

namespace {

// Floor division for signed integers (C++ '/' truncates toward zero).
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

double Dyadic::value() const { return std::ldexp(double(num), -level); }

bool Dyadic::is_canonical() const {
  if (num == 0) return level == 0;
  return (num % 2 != 0) || level == 0;
}

Dyadic make_canonical(std::int64_t num, int level) {
  if (level < 0) {
    throw UsageError("dyadic level must be nonnegative");
  }
  while (level > 0 && num % 2 == 0) {
    if (num == 0) {
      level = 0;
      break;
    }
    num /= 2;
    --level;
  }
  if (num == 0) level = 0;
  return Dyadic{num, level};
}

Dyadic dyadic_approx(double shift, int h_max) {
  if (!std::isfinite(shift)) {
    throw UsageError("shift must be finite");
  }
  if (h_max < 0) {
    throw UsageError("h_max must be nonnegative");
  }
  // std::round halves away from zero, matching the tie rule.
  const double scaled = std::round(std::ldexp(shift, h_max));
  return make_canonical(static_cast<std::int64_t>(scaled), h_max);
}

DyadicShift dyadic_approx2(double shift_x, double shift_y, int h_max) {
  return DyadicShift{dyadic_approx(shift_x, h_max),
                     dyadic_approx(shift_y, h_max)};
}

AxisDecomposition decompose_axis(const Dyadic& shift) {
  if (!shift.is_canonical()) {
    throw UsageError("decompose_axis requires a canonical dyadic shift");
  }
  AxisDecomposition out;
  if (shift.level == 0) {
    // Integer shift: even part becomes circular, odd leaves one pixel.
    if (shift.num % 2 == 0) {
      out.circular = shift.num / 2;
      out.residual = Dyadic{0, 0};
    } else {
      out.circular = floor_div(shift.num, 2);
      out.residual = Dyadic{1, 0};
    }
    return out;
  }
  // Fractional: exactly one of floor/ceil is even; circular-shift to it.
  const std::int64_t denom = std::int64_t{1} << shift.level;
  const std::int64_t fl = floor_div(shift.num, denom);
  const std::int64_t anchor = (fl % 2 == 0) ? fl : fl + 1;
  out.circular = anchor / 2;
  out.residual = Dyadic{shift.num - anchor * denom, shift.level};
  return out;
}

ShiftSpec decompose_shift(const DyadicShift& shift) {
  const AxisDecomposition x = decompose_axis(shift.x);
  const AxisDecomposition y = decompose_axis(shift.y);
  return ShiftSpec{x.circular, y.circular, x.residual, y.residual};
}

SubpixelOps build_band_ops(std::int64_t s, int h, Axis axis, int size) {
  if (h < 0 || h > 62) {
    throw UsageError("operator level out of range");
  }
  const std::int64_t unit = std::int64_t{1} << h;
  if (std::abs(s) > unit) {
    throw UsageError("subpixel numerator |" + std::to_string(s) +
                     "| exceeds 2^" + std::to_string(h));
  }
  if (size <= 0) {
    throw UsageError("operator size must be positive");
  }
  const double denom = std::ldexp(1.0, h + 1);
  const double mag = double(std::abs(s));
  const int tap = s > 0 ? -1 : (s < 0 ? 1 : 0);
  SubpixelOps ops;
  ops.smooth = BandOperator{(denom - mag) / denom, mag / denom, tap, axis, size};
  ops.cross = BandOperator{-double(s) / denom, double(s) / denom, tap, axis, size};
  ops.detail =
      BandOperator{(denom - 3.0 * mag) / denom, -mag / denom, tap, axis, size};
  return ops;
}

SubbandSet rotate_bands(const SubbandSet& bands, int dr, int dc) {
  bands.validate();
  return SubbandSet{rotated(bands.approx, dr, dc), rotated(bands.horiz, dr, dc),
                    rotated(bands.vert, dr, dc), rotated(bands.diag, dr, dc)};
}

namespace {

// One coupled pass along an axis:
//   P' = F P - K1 Q
//   Q' = K1 P + K2 Q
// realized as two-tap periodic filters. Along x the taps run over
// columns, along y over rows.
void coupled_pass(const Mat& P, const Mat& Q, const SubpixelOps& ops,
                  Mat& P_out, Mat& Q_out) {
  const int rows = P.rows();
  const int cols = P.cols();
  const double f_d = ops.smooth.diag, f_o = ops.smooth.offdiag;
  const double k1_d = ops.cross.diag, k1_o = ops.cross.offdiag;
  const double k2_d = ops.detail.diag, k2_o = ops.detail.offdiag;
  const int tap = ops.smooth.tap;
  P_out = Mat(rows, cols);
  Q_out = Mat(rows, cols);
  if (ops.smooth.axis == Axis::kX) {
    for (int r = 0; r < rows; ++r) {
      const double* p = P.row(r);
      const double* q = Q.row(r);
      double* po = P_out.row(r);
      double* qo = Q_out.row(r);
      for (int c = 0; c < cols; ++c) {
        const int nc = wrap_index(c + tap, cols);
        po[c] = f_d * p[c] + f_o * p[nc] - (k1_d * q[c] + k1_o * q[nc]);
        qo[c] = k1_d * p[c] + k1_o * p[nc] + k2_d * q[c] + k2_o * q[nc];
      }
    }
  } else {
    for (int r = 0; r < rows; ++r) {
      const int nr = wrap_index(r + tap, rows);
      const double* p = P.row(r);
      const double* pn = P.row(nr);
      const double* q = Q.row(r);
      const double* qn = Q.row(nr);
      double* po = P_out.row(r);
      double* qo = Q_out.row(r);
      for (int c = 0; c < cols; ++c) {
        po[c] = f_d * p[c] + f_o * pn[c] - (k1_d * q[c] + k1_o * qn[c]);
        qo[c] = k1_d * p[c] + k1_o * pn[c] + k2_d * q[c] + k2_o * qn[c];
      }
    }
  }
}

}  // namespace

SubbandSet apply_subpixel(const SubbandSet& bands, const Dyadic& res_x,
                          const Dyadic& res_y) {
  bands.validate();
  SubbandSet cur = bands;
  if (!res_x.is_zero()) {
    const SubpixelOps ops =
        build_band_ops(res_x.num, res_x.level, Axis::kX, cur.cols());
    SubbandSet next;
    coupled_pass(cur.approx, cur.horiz, ops, next.approx, next.horiz);
    coupled_pass(cur.vert, cur.diag, ops, next.vert, next.diag);
    cur = std::move(next);
  }
  if (!res_y.is_zero()) {
    const SubpixelOps ops =
        build_band_ops(res_y.num, res_y.level, Axis::kY, cur.rows());
    SubbandSet next;
    coupled_pass(cur.approx, cur.vert, ops, next.approx, next.vert);
    coupled_pass(cur.horiz, cur.diag, ops, next.horiz, next.diag);
    cur = std::move(next);
  }
  return cur;
}

SubbandSet apply_inband_shift(const SubbandSet& bands, const ShiftSpec& spec) {
  SubbandSet rotated_set = rotate_bands(
      bands, static_cast<int>(spec.circ_y), static_cast<int>(spec.circ_x));
  return apply_subpixel(rotated_set, spec.res_x, spec.res_y);
}

}  // namespace wmc
