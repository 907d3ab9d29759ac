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

#ifndef WMC_VIDEO_IO_HPP_
#define WMC_VIDEO_IO_HPP_

#include <string>
#include <vector>

#include "wmc/mat.hpp"

namespace wmc {

enum class SourceFormat {
  kY4m,        // YUV4MPEG2 container
  kRawYuv420,  // headerless planar 4:2:0; dimensions supplied by caller
  kPgmList,    // text file listing one PGM path per line
};

struct SequenceSource {
  std::string path;
  SourceFormat format = SourceFormat::kY4m;
  int width = 0;   // required for kRawYuv420
  int height = 0;
};

struct Y4mHeader {
  int width = 0;
  int height = 0;
  int fps_num = 30;
  int fps_den = 1;
  std::string colorspace = "420";  // tag after 'C', default 4:2:0
};

// Parses a "YUV4MPEG2 ..." stream header line (without the newline).
Y4mHeader parse_y4m_header(const std::string& line);

// Loads the luminance plane of each frame as reals in [0, 255]. Chroma
// planes are skipped, not resampled. max_frames < 0 loads everything.
std::vector<Frame> load_frames(const SequenceSource& src, int max_frames = -1);

// Writes a binary PGM (P5, maxval 255). `offset` is added before rounding
// and clamping to [0, 255]; pass 128 for residual visualization. Returns
// the number of clamped samples (also via clamped_out when non-null).
int save_pgm(const Frame& frame, const std::string& path, double offset = 0.0,
             int* clamped_out = nullptr);

Frame load_pgm(const std::string& path);

}  // namespace wmc

#endif  // WMC_VIDEO_IO_HPP_
