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

#include "wmc/video_io.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace wmc {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

Frame luma_to_frame(const std::uint8_t* data, int width, int height) {
  Frame frame(height, width);
  for (int r = 0; r < height; ++r) {
    double* dst = frame.row(r);
    const std::uint8_t* src = data + static_cast<std::size_t>(r) * width;
    for (int c = 0; c < width; ++c) dst[c] = static_cast<double>(src[c]);
  }
  return frame;
}

// Bytes of one frame's chroma payload for a Y4M colorspace tag.
std::size_t chroma_bytes(const std::string& cs, int width, int height,
                         std::size_t offset) {
  const std::size_t luma = static_cast<std::size_t>(width) * height;
  if (cs.rfind("420", 0) == 0) return luma / 2;
  if (cs.rfind("422", 0) == 0) return luma;
  if (cs.rfind("444", 0) == 0) return 2 * luma;
  if (cs.rfind("mono", 0) == 0) return 0;
  throw ParseError("unsupported Y4M colorspace C" + cs, offset);
}

}  // namespace

Y4mHeader parse_y4m_header(const std::string& line) {
  const std::string magic = "YUV4MPEG2";
  if (line.rfind(magic, 0) != 0) {
    throw ParseError("missing YUV4MPEG2 signature", 0);
  }
  Y4mHeader hdr;
  std::istringstream tokens(line.substr(magic.size()));
  std::string tok;
  while (tokens >> tok) {
    switch (tok[0]) {
      case 'W':
        hdr.width = std::stoi(tok.substr(1));
        break;
      case 'H':
        hdr.height = std::stoi(tok.substr(1));
        break;
      case 'F': {
        const std::size_t colon = tok.find(':');
        if (colon == std::string::npos) {
          throw ParseError("malformed Y4M frame rate " + tok, 0);
        }
        hdr.fps_num = std::stoi(tok.substr(1, colon - 1));
        hdr.fps_den = std::stoi(tok.substr(colon + 1));
        break;
      }
      case 'C':
        hdr.colorspace = tok.substr(1);
        break;
      default:
        break;  // interlace, aspect, extensions: ignored
    }
  }
  if (hdr.width <= 0 || hdr.height <= 0) {
    throw ParseError("Y4M header lacks valid W/H", 0);
  }
  return hdr;
}

namespace {

std::vector<Frame> load_y4m(const std::string& path, int max_frames) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  std::size_t pos = 0;
  std::size_t eol = pos;
  while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
  if (eol == bytes.size()) {
    throw ParseError("Y4M stream header line unterminated", eol);
  }
  const Y4mHeader hdr = parse_y4m_header(
      std::string(bytes.begin(), bytes.begin() + eol));
  pos = eol + 1;

  const std::size_t luma = static_cast<std::size_t>(hdr.width) * hdr.height;
  std::vector<Frame> frames;
  while (pos < bytes.size()) {
    if (max_frames >= 0 && static_cast<int>(frames.size()) >= max_frames) {
      break;
    }
    // Each frame opens with a "FRAME..." line.
    static const char kFrame[] = "FRAME";
    if (pos + 5 > bytes.size() ||
        std::string(bytes.begin() + pos, bytes.begin() + pos + 5) != kFrame) {
      throw ParseError("expected FRAME marker for frame " +
                           std::to_string(frames.size()),
                       pos);
    }
    while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    if (pos == bytes.size()) {
      throw ParseError("FRAME header line unterminated", pos);
    }
    ++pos;
    const std::size_t chroma = chroma_bytes(hdr.colorspace, hdr.width,
                                            hdr.height, pos);
    if (pos + luma + chroma > bytes.size()) {
      throw ParseError("frame " + std::to_string(frames.size()) +
                           " payload truncated",
                       pos);
    }
    frames.push_back(luma_to_frame(bytes.data() + pos, hdr.width, hdr.height));
    pos += luma + chroma;
  }
  return frames;
}

std::vector<Frame> load_raw_yuv420(const SequenceSource& src, int max_frames) {
  if (src.width <= 0 || src.height <= 0) {
    throw UsageError("raw YUV420 input requires explicit dimensions");
  }
  const std::vector<std::uint8_t> bytes = read_file(src.path);
  const std::size_t luma = static_cast<std::size_t>(src.width) * src.height;
  const std::size_t frame_bytes = luma + luma / 2;
  if (bytes.size() % frame_bytes != 0) {
    throw ParseError("file size " + std::to_string(bytes.size()) +
                         " is not a whole number of " +
                         std::to_string(frame_bytes) + "-byte frames; frame " +
                         std::to_string(bytes.size() / frame_bytes) +
                         " is truncated",
                     (bytes.size() / frame_bytes) * frame_bytes);
  }
  std::vector<Frame> frames;
  for (std::size_t pos = 0; pos + frame_bytes <= bytes.size();
       pos += frame_bytes) {
    if (max_frames >= 0 && static_cast<int>(frames.size()) >= max_frames) {
      break;
    }
    frames.push_back(luma_to_frame(bytes.data() + pos, src.width, src.height));
  }
  return frames;
}

std::vector<Frame> load_pgm_list(const std::string& path, int max_frames) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open " + path);
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<Frame> frames;
  std::string line;
  while (std::getline(in, line)) {
    if (max_frames >= 0 && static_cast<int>(frames.size()) >= max_frames) {
      break;
    }
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    std::filesystem::path entry(line);
    if (entry.is_relative()) entry = base / entry;
    frames.push_back(load_pgm(entry.string()));
  }
  return frames;
}

}  // namespace

std::vector<Frame> load_frames(const SequenceSource& src, int max_frames) {
  std::vector<Frame> frames;
  switch (src.format) {
    case SourceFormat::kY4m:
      frames = load_y4m(src.path, max_frames);
      break;
    case SourceFormat::kRawYuv420:
      frames = load_raw_yuv420(src, max_frames);
      break;
    case SourceFormat::kPgmList:
      frames = load_pgm_list(src.path, max_frames);
      break;
  }
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (!frames[i].same_size(frames.front())) {
      throw DimensionError("frame " + std::to_string(i) +
                           " differs in size from frame 0");
    }
  }
  return frames;
}

int save_pgm(const Frame& frame, const std::string& path, double offset,
             int* clamped_out) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write " + path);
  }
  out << "P5\n" << frame.cols() << " " << frame.rows() << "\n255\n";
  int clamped = 0;
  std::vector<std::uint8_t> row_bytes(frame.cols());
  for (int r = 0; r < frame.rows(); ++r) {
    const double* src = frame.row(r);
    for (int c = 0; c < frame.cols(); ++c) {
      double v = std::round(src[c] + offset);
      if (v < 0.0) {
        v = 0.0;
        ++clamped;
      } else if (v > 255.0) {
        v = 255.0;
        ++clamped;
      }
      row_bytes[c] = static_cast<std::uint8_t>(v);
    }
    out.write(reinterpret_cast<const char*>(row_bytes.data()),
              row_bytes.size());
  }
  if (!out) {
    throw UsageError("write failed for " + path);
  }
  if (clamped_out) *clamped_out = clamped;
  return clamped;
}

Frame load_pgm(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {  // comment runs to end of line
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> int {
    skip_space();
    const std::size_t start = pos;
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      value = value * 10 + (bytes[pos] - '0');
      ++pos;
    }
    if (pos == start) {
      throw ParseError("expected integer in PGM header", pos);
    }
    return static_cast<int>(value);
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ParseError("not a binary PGM (P5) file", 0);
  }
  pos = 2;
  const int width = read_int();
  const int height = read_int();
  const int maxval = read_int();
  if (maxval != 255) {
    throw ParseError("only maxval 255 PGM supported", pos);
  }
  ++pos;  // single whitespace byte after maxval
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (pos + need > bytes.size()) {
    throw ParseError("PGM pixel data truncated", bytes.size());
  }
  return luma_to_frame(bytes.data() + pos, width, height);
}

}  // namespace wmc
