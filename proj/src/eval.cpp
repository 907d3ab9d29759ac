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

#include "wmc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace wmc {

double psnr(const Frame& a, const Frame& b, double peak) {
  if (!a.same_size(b)) {
    throw DimensionError("psnr: frames differ in size");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    sse += d * d;
  }
  if (sse == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double mse = sse / static_cast<double>(a.size());
  return 10.0 * std::log10(peak * peak / mse);
}

std::vector<RateDistortionPoint> rd_sweep(const std::vector<Frame>& frames,
                                          CodecConfig cfg,
                                          std::vector<double> thresholds) {
  if (thresholds.empty()) {
    throw UsageError("rd_sweep needs at least one threshold");
  }
  if (frames.size() < 2) {
    throw UsageError("rd_sweep needs at least two frames");
  }
  std::sort(thresholds.begin(), thresholds.end());

  const double pixels = static_cast<double>(frames.front().size());
  const std::size_t n_targets = frames.size() / 2;
  std::vector<RateDistortionPoint> points;
  for (double t : thresholds) {
    cfg.threshold = static_cast<float>(t);
    const EncodedStream stream = encode_sequence(frames, cfg);
    const std::vector<std::uint8_t> bytes = serialize_stream(stream);
    const std::vector<Frame> decoded = decode_sequence(parse_stream(bytes));

    RateDistortionPoint pt;
    pt.method =
        cfg.match_mode == MatchMode::kBandToBand ? "band2band" : "inband";
    pt.threshold = t;
    pt.bits_total = 8ull * bytes.size();
    for (const GopPayload& gop : stream.gops) {
      pt.bits_residual += 8ull * gop.residual.size();
    }
    pt.bpp = static_cast<double>(pt.bits_total) /
             (pixels * static_cast<double>(frames.size()));
    pt.bpp_err = n_targets == 0
                     ? 0.0
                     : static_cast<double>(pt.bits_residual) /
                           (pixels * static_cast<double>(n_targets));
    double sum = 0.0;
    for (std::size_t t2 = 1; t2 < frames.size(); t2 += 2) {
      const double db = psnr(frames[t2], decoded[t2]);
      pt.psnr_targets.push_back(db);
      sum += db;
    }
    pt.psnr_mean = pt.psnr_targets.empty()
                       ? 0.0
                       : sum / static_cast<double>(pt.psnr_targets.size());
    points.push_back(std::move(pt));
  }
  return points;
}

void write_rd_csv(std::ostream& out,
                  const std::vector<RateDistortionPoint>& points) {
  std::size_t n_targets = 0;
  for (const RateDistortionPoint& pt : points) {
    n_targets = std::max(n_targets, pt.psnr_targets.size());
  }
  out << "method,threshold,bits,bpp,bpp_err,psnr_mean";
  for (std::size_t i = 0; i < n_targets; ++i) {
    out << ",psnr_t" << i;
  }
  out << "\n";
  char buf[64];
  auto fixed = [&](double v) -> const char* {
    if (std::isinf(v)) return "inf";
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
  };
  for (const RateDistortionPoint& pt : points) {
    out << pt.method << "," << fixed(pt.threshold) << "," << pt.bits_total;
    out << "," << fixed(pt.bpp);
    out << "," << fixed(pt.bpp_err);
    out << "," << fixed(pt.psnr_mean);
    for (double db : pt.psnr_targets) {
      out << "," << fixed(db);
    }
    out << "\n";
  }
}

bool psnr_at_bpp(const std::vector<RateDistortionPoint>& curve, double bpp,
                 double* psnr_out) {
  // Sweep points arrive ordered by threshold, i.e. descending rate.
  std::vector<std::pair<double, double>> pts;
  for (const RateDistortionPoint& pt : curve) {
    pts.emplace_back(pt.bpp, pt.psnr_mean);
  }
  std::sort(pts.begin(), pts.end());
  if (pts.empty() || bpp < pts.front().first || bpp > pts.back().first) {
    return false;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (bpp <= pts[i].first) {
      const double x0 = pts[i - 1].first, y0 = pts[i - 1].second;
      const double x1 = pts[i].first, y1 = pts[i].second;
      *psnr_out = x1 == x0 ? y1 : y0 + (y1 - y0) * (bpp - x0) / (x1 - x0);
      return true;
    }
  }
  return false;
}

}  // namespace wmc
