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
// Exact wavelet-domain translation of a SubbandSet by any dyadic 2-D
// displacement. Even pixel shifts are pure circular moves of subband
// samples; the residual subpixel part is realized by two-tap bidiagonal
// Toeplitz operators applied under periodic extension, so no upsampling,
// synthesis, or interpolation is ever performed.

#ifndef WMC_SHIFT_HPP_
#define WMC_SHIFT_HPP_

#include <cstdint>

#include "wmc/wavelet.hpp"

namespace wmc {

// A dyadic number num / 2^level, canonical when num is odd or num == 0
// (in which case level == 0).
struct Dyadic {
  std::int64_t num = 0;
  int level = 0;

  double value() const;
  bool is_zero() const { return num == 0; }
  bool is_canonical() const;
};

Dyadic make_canonical(std::int64_t num, int level);

// Nearest multiple of 2^-h_max to `shift` (ties away from zero), reduced
// to canonical form.
Dyadic dyadic_approx(double shift, int h_max);

// Two-axis dyadic displacement in pixels. Positive x moves content toward
// increasing column index; positive y toward increasing row index.
struct DyadicShift {
  Dyadic x, y;
};

DyadicShift dyadic_approx2(double shift_x, double shift_y, int h_max);

// A displacement split into an integer circular move of subband samples
// (1 sample = 2 pixels) plus a subpixel residual of magnitude <= 1 pixel,
// satisfying 2 * circular + residual == original shift exactly per axis.
struct ShiftSpec {
  std::int64_t circ_x = 0;
  std::int64_t circ_y = 0;
  Dyadic res_x, res_y;
};

struct AxisDecomposition {
  std::int64_t circular = 0;
  Dyadic residual;
};

// Splits one axis of a canonical dyadic shift s / 2^h:
//   s even integer       -> circular s/2,        residual 0
//   s odd integer        -> circular floor(s/2), residual 1
//   fractional, ceil even  -> circular ceil/2,   residual s - ceil  (< 0)
//   fractional, floor even -> circular floor/2,  residual s - floor (> 0)
// The residual always lies in (-1, 1].
AxisDecomposition decompose_axis(const Dyadic& shift);

ShiftSpec decompose_shift(const DyadicShift& shift);

enum class Axis { kX, kY };

// One two-tap bidiagonal Toeplitz operator under periodic extension:
//   out[i] = diag * in[i] + offdiag * in[i + tap]
// where the index runs along `axis` and tap is -1 for positive shifts,
// +1 for negative ones (the diagonals interchange), 0 when unused.
struct BandOperator {
  double diag = 1.0;
  double offdiag = 0.0;
  int tap = 0;
  Axis axis = Axis::kX;
  int size = 0;
};

// The operator triple for one axis residual s / 2^h (|s| <= 2^h), with
// entries over the common denominator 2^(h+1):
//   smooth (F):  diag 2^(h+1) - |s|,  offdiag  |s|
//   cross (K1):  diag -s,             offdiag   s
//   detail (K2): diag 2^(h+1) - 3|s|, offdiag -|s|
// At s == 0, smooth and detail are the identity and cross is zero.
struct SubpixelOps {
  BandOperator smooth;
  BandOperator cross;
  BandOperator detail;
};

SubpixelOps build_band_ops(std::int64_t s, int h, Axis axis, int size);

// Circular translation of all four planes by (dr, dc) subband samples.
SubbandSet rotate_bands(const SubbandSet& bands, int dr, int dc);

// Applies only the subpixel residual operators (no circular part). The
// planes couple pairwise per axis; along x with ops (F, K1, K2):
//   A' = F A - K1 a        a' = K1 A + K2 a
//   b' = F b - K1 c        c' = K1 b + K2 c
// and along y with the same structure on the (A,b) and (a,c) pairs.
SubbandSet apply_subpixel(const SubbandSet& bands, const Dyadic& res_x,
                          const Dyadic& res_y);

// Full in-band shift: circularly rotates all planes by spec.circ, then
// applies the subpixel operators. Output dimensions equal input
// dimensions; boundaries are periodic throughout.
SubbandSet apply_inband_shift(const SubbandSet& bands, const ShiftSpec& spec);

}  // namespace wmc

#endif  // WMC_SHIFT_HPP_
