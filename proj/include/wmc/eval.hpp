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

#ifndef WMC_EVAL_HPP_
#define WMC_EVAL_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wmc/codec.hpp"

namespace wmc {

// Peak signal-to-noise ratio in dB over luminance. Identical inputs give
// +infinity, never an overflow.
double psnr(const Frame& a, const Frame& b, double peak = 255.0);

struct RateDistortionPoint {
  std::string method;        // "inband" or "band2band"
  double threshold = 0.0;
  std::uint64_t bits_total = 0;     // whole stream
  std::uint64_t bits_residual = 0;  // error-frame payloads only
  double bpp = 0.0;       // bits_total / (W * H * frames)
  double bpp_err = 0.0;   // bits_residual / (W * H * predicted frames)
  std::vector<double> psnr_targets;  // decoded target (predicted) frames
  double psnr_mean = 0.0;            // mean over targets
};

// Encodes/decodes the sequence once per threshold and measures rate and
// distortion. Rows come back ordered by threshold. Throws UsageError for
// an empty threshold list or fewer than two frames.
std::vector<RateDistortionPoint> rd_sweep(const std::vector<Frame>& frames,
                                          CodecConfig cfg,
                                          std::vector<double> thresholds);

// CSV emission: header
//   method,threshold,bits,bpp,bpp_err,psnr_mean,psnr_t0,...
// with deterministic formatting (identical inputs give identical bytes).
void write_rd_csv(std::ostream& out,
                  const std::vector<RateDistortionPoint>& points);

// Linear interpolation of PSNR at the given rate on one method's sweep.
// Returns false when bpp lies outside the curve's rate range.
bool psnr_at_bpp(const std::vector<RateDistortionPoint>& curve, double bpp,
                 double* psnr_out);

}  // namespace wmc

#endif  // WMC_EVAL_HPP_
