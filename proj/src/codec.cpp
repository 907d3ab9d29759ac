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

#include "wmc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "wmc/bitio.hpp"

namespace wmc {

namespace {

constexpr char kMagic[4] = {'W', 'M', 'C', '1'};
constexpr std::uint8_t kVersion = 1;

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
}

void append_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  append_u32(out, bits);
}

void append_bytes(std::vector<std::uint8_t>& out,
                  const std::vector<std::uint8_t>& bytes) {
  append_u32(out, static_cast<std::uint32_t>(bytes.size()));
  out.insert(out.end(), bytes.begin(), bytes.end());
}

struct Cursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > size) {
      throw TruncatedStreamError("stream truncated at byte " +
                                 std::to_string(pos));
    }
  }
  std::uint8_t u8() {
    need(1);
    return data[pos++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data[pos]) |
                      static_cast<std::uint16_t>(data[pos + 1]) << 8;
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(data[pos + i]) << (8 * i);
    }
    pos += 4;
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  std::vector<std::uint8_t> blob() {
    const std::uint32_t len = u32();
    need(len);
    std::vector<std::uint8_t> out(data + pos, data + pos + len);
    pos += len;
    return out;
  }
};

}  // namespace

void CodecConfig::validate() const {
  search_params().validate();
  if (threshold < 0.0f || !std::isfinite(threshold)) {
    throw UsageError("threshold must be finite and nonnegative");
  }
  if (extra_spatial_levels < 0 || extra_spatial_levels > 8) {
    throw UsageError("extra_spatial_levels must be in 0..8");
  }
  if (block_size > 255 || search_range > 255) {
    throw UsageError("block_size and search_range must fit in a byte");
  }
}

int CodecConfig::pad_multiple() const {
  return 1 << std::max(kIntraLevels, extra_spatial_levels + 1);
}

std::vector<std::uint8_t> serialize_stream(const EncodedStream& stream) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  append_u16(out, stream.width);
  append_u16(out, stream.height);
  append_u32(out, stream.frame_count);
  out.push_back(static_cast<std::uint8_t>(stream.config.block_size));
  out.push_back(static_cast<std::uint8_t>(stream.config.precision));
  out.push_back(static_cast<std::uint8_t>(stream.config.search_range));
  append_f32(out, stream.config.threshold);
  out.push_back(static_cast<std::uint8_t>(stream.config.extra_spatial_levels));
  for (const GopPayload& gop : stream.gops) {
    out.push_back(gop.type);
    append_bytes(out, gop.reference);
    append_bytes(out, gop.mv);
    append_bytes(out, gop.residual);
  }
  return out;
}

EncodedStream parse_stream(const std::uint8_t* data, std::size_t size) {
  Cursor cur{data, size};
  cur.need(4);
  if (std::memcmp(data, kMagic, 4) != 0) {
    throw StreamError("bad magic; not a wmcodec stream");
  }
  cur.pos = 4;
  const std::uint8_t version = cur.u8();
  if (version != kVersion) {
    throw StreamError("unsupported stream version " + std::to_string(version));
  }
  EncodedStream stream;
  stream.width = cur.u16();
  stream.height = cur.u16();
  stream.frame_count = cur.u32();
  stream.config.block_size = cur.u8();
  stream.config.precision = cur.u8();
  stream.config.search_range = cur.u8();
  stream.config.threshold = cur.f32();
  stream.config.extra_spatial_levels = cur.u8();
  stream.config.validate();
  if (stream.width == 0 || stream.height == 0) {
    throw StreamError("stream declares empty frame dimensions");
  }
  const std::uint32_t expected_gops = (stream.frame_count + 1) / 2;
  for (std::uint32_t g = 0; g < expected_gops; ++g) {
    GopPayload gop;
    gop.type = cur.u8();
    if (gop.type > 1) {
      throw StreamError("unknown GOP type " + std::to_string(gop.type));
    }
    gop.reference = cur.blob();
    gop.mv = cur.blob();
    gop.residual = cur.blob();
    stream.gops.push_back(std::move(gop));
  }
  return stream;
}

EncodedStream parse_stream(const std::vector<std::uint8_t>& bytes) {
  return parse_stream(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> encode_mv(const MotionField& field) {
  field.validate();
  BitWriter writer;
  MotionVector prev;
  for (const MotionVector& mv : field.vectors) {
    put_exp_golomb(writer, zigzag_encode(mv.dx - prev.dx));
    put_exp_golomb(writer, zigzag_encode(mv.dy - prev.dy));
    prev = mv;
  }
  return writer.take();
}

MotionField decode_mv(const std::vector<std::uint8_t>& bytes, int band_rows,
                      int band_cols, int block_size, int precision) {
  MotionField field;
  field.block_size = block_size;
  field.precision = precision;
  field.band_rows = band_rows;
  field.band_cols = band_cols;
  field.grid_rows = (band_rows + block_size - 1) / block_size;
  field.grid_cols = (band_cols + block_size - 1) / block_size;
  field.vectors.resize(static_cast<std::size_t>(field.grid_rows) *
                       field.grid_cols);
  BitReader reader(bytes);
  MotionVector prev;
  for (MotionVector& mv : field.vectors) {
    const std::int64_t ddx = zigzag_decode(get_exp_golomb(reader));
    const std::int64_t ddy = zigzag_decode(get_exp_golomb(reader));
    mv.dx = prev.dx + static_cast<int>(ddx);
    mv.dy = prev.dy + static_cast<int>(ddy);
    prev = mv;
  }
  field.validate();
  return field;
}

namespace {

// Plane scale 2^level makes rounding exact for coefficients of
// integer-valued input, so threshold 0 reproduces the reference bit for
// bit.
double intra_scale(int level) { return std::ldexp(1.0, level); }

std::vector<QuantizedPlane> pyramid_planes(const Pyramid& pyr, float threshold,
                                           bool scaled) {
  std::vector<QuantizedPlane> planes;
  for (int lvl = 0; lvl < pyr.levels(); ++lvl) {
    const double scale = scaled ? intra_scale(lvl + 1) : 1.0;
    planes.push_back(quantize(pyr.details[lvl].horiz, threshold, scale));
    planes.push_back(quantize(pyr.details[lvl].vert, threshold, scale));
    planes.push_back(quantize(pyr.details[lvl].diag, threshold, scale));
  }
  planes.push_back(quantize(
      pyr.top, threshold, scaled ? intra_scale(pyr.levels()) : 1.0));
  return planes;
}

Pyramid planes_to_pyramid(const std::vector<QuantizedPlane>& planes,
                          int levels, int rows, int cols) {
  if (planes.size() != static_cast<std::size_t>(3 * levels + 1)) {
    throw StreamError("pyramid payload has wrong plane count");
  }
  Pyramid pyr;
  pyr.orig_rows = rows;
  pyr.orig_cols = cols;
  int r = rows / 2;
  int c = cols / 2;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const QuantizedPlane& h = planes[3 * lvl];
    if (h.rows != r || h.cols != c) {
      throw StreamError("pyramid plane dimensions do not match header");
    }
    pyr.details.push_back(DetailLevel{dequantize(planes[3 * lvl]),
                                      dequantize(planes[3 * lvl + 1]),
                                      dequantize(planes[3 * lvl + 2])});
    if (lvl + 1 < levels) {
      r /= 2;
      c /= 2;
    }
  }
  if (planes.back().rows != r || planes.back().cols != c) {
    throw StreamError("pyramid approximation dimensions do not match header");
  }
  pyr.top = dequantize(planes.back());
  return pyr;
}

}  // namespace

std::vector<std::uint8_t> intra_encode(const Frame& padded, float threshold) {
  const Pyramid pyr = haar_forward(padded, kIntraLevels, Padding::kNone);
  return entropy_encode(pyramid_planes(pyr, threshold, /*scaled=*/true));
}

Frame intra_decode(const std::vector<std::uint8_t>& payload, int rows,
                   int cols) {
  const std::vector<QuantizedPlane> planes = entropy_decode(payload);
  return haar_inverse(planes_to_pyramid(planes, kIntraLevels, rows, cols));
}

namespace {

std::vector<QuantizedPlane> residual_planes(const SubbandSet& residual,
                                            const CodecConfig& cfg) {
  std::vector<QuantizedPlane> planes;
  planes.push_back(quantize(residual.horiz, cfg.threshold));
  planes.push_back(quantize(residual.vert, cfg.threshold));
  planes.push_back(quantize(residual.diag, cfg.threshold));
  if (cfg.extra_spatial_levels == 0) {
    planes.push_back(quantize(residual.approx, cfg.threshold));
  } else {
    const Pyramid deeper = haar_forward(residual.approx,
                                        cfg.extra_spatial_levels,
                                        Padding::kNone);
    for (const QuantizedPlane& p :
         pyramid_planes(deeper, cfg.threshold, /*scaled=*/false)) {
      planes.push_back(p);
    }
  }
  return planes;
}

SubbandSet residual_from_planes(const std::vector<QuantizedPlane>& planes,
                                const CodecConfig& cfg, int band_rows,
                                int band_cols) {
  const std::size_t expected =
      cfg.extra_spatial_levels == 0
          ? 4
          : 3 + 3 * static_cast<std::size_t>(cfg.extra_spatial_levels) + 1;
  if (planes.size() != expected) {
    throw StreamError("residual payload has wrong plane count");
  }
  for (int p = 0; p < 3; ++p) {
    if (planes[p].rows != band_rows || planes[p].cols != band_cols) {
      throw StreamError("residual plane dimensions do not match header");
    }
  }
  SubbandSet out;
  out.horiz = dequantize(planes[0]);
  out.vert = dequantize(planes[1]);
  out.diag = dequantize(planes[2]);
  if (cfg.extra_spatial_levels == 0) {
    out.approx = dequantize(planes[3]);
  } else {
    std::vector<QuantizedPlane> rest(planes.begin() + 3, planes.end());
    out.approx = haar_inverse(planes_to_pyramid(rest, cfg.extra_spatial_levels,
                                                band_rows, band_cols));
  }
  out.validate();
  return out;
}

MotionField run_search(const SubbandSet& ref_bands,
                       const SubbandSet& target_bands,
                       const CodecConfig& cfg) {
  if (cfg.match_mode == MatchMode::kBandToBand) {
    return band_to_band_search(ref_bands, target_bands, cfg.search_params());
  }
  return full_search(ref_bands, target_bands, cfg.search_params());
}

}  // namespace

GopResult encode_gop(const Frame& ref, const Frame& target,
                     const CodecConfig& cfg) {
  cfg.validate();
  if (!ref.same_size(target)) {
    throw DimensionError("reference and target frames differ in size");
  }
  GopResult result;
  result.payload.type = 0;
  result.payload.reference = intra_encode(ref, cfg.threshold);

  // Closed loop: estimate against the reference the decoder will see.
  result.recon_ref =
      intra_decode(result.payload.reference, ref.rows(), ref.cols());
  const SubbandSet ref_bands = analyze_once(result.recon_ref);
  const SubbandSet target_bands = analyze_once(target);

  const MotionField field = run_search(ref_bands, target_bands, cfg);
  const SubbandSet predicted = compensate(ref_bands, field);
  const SubbandSet residual = subtract_bands(target_bands, predicted);

  result.payload.mv = encode_mv(field);
  const std::vector<QuantizedPlane> planes = residual_planes(residual, cfg);
  result.payload.residual = entropy_encode(planes);

  const SubbandSet recon_residual =
      residual_from_planes(planes, cfg, ref_bands.rows(), ref_bands.cols());
  result.recon_target =
      synthesize_once(add_bands(predicted, recon_residual));
  return result;
}

std::pair<Frame, Frame> decode_gop(const GopPayload& gop,
                                   const CodecConfig& cfg, int padded_rows,
                                   int padded_cols) {
  if (gop.type != 0) {
    throw StreamError("decode_gop expects a pair GOP");
  }
  Frame recon_ref = intra_decode(gop.reference, padded_rows, padded_cols);
  const SubbandSet ref_bands = analyze_once(recon_ref);
  const MotionField field =
      decode_mv(gop.mv, ref_bands.rows(), ref_bands.cols(), cfg.block_size,
                cfg.precision);
  const SubbandSet predicted = compensate(ref_bands, field);
  const SubbandSet residual = residual_from_planes(
      entropy_decode(gop.residual), cfg, ref_bands.rows(), ref_bands.cols());
  Frame recon_target = synthesize_once(add_bands(predicted, residual));
  return {std::move(recon_ref), std::move(recon_target)};
}

Frame decode_gop_residual(const GopPayload& gop, const CodecConfig& cfg,
                          int padded_rows, int padded_cols) {
  if (gop.type != 0) {
    throw StreamError("residual view needs a pair GOP");
  }
  const SubbandSet residual =
      residual_from_planes(entropy_decode(gop.residual), cfg,
                           padded_rows / 2, padded_cols / 2);
  return synthesize_once(residual);
}

namespace {

Frame crop(const Frame& frame, int rows, int cols) {
  if (frame.rows() == rows && frame.cols() == cols) return frame;
  Mat out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const double* src = frame.row(r);
    std::copy(src, src + cols, out.row(r));
  }
  return out;
}

}  // namespace

EncodedStream encode_sequence(const std::vector<Frame>& frames,
                              const CodecConfig& cfg,
                              std::vector<Frame>* recon_out) {
  cfg.validate();
  if (frames.empty()) {
    throw UsageError("cannot encode an empty sequence");
  }
  const int rows = frames.front().rows();
  const int cols = frames.front().cols();
  if (rows > 65535 || cols > 65535) {
    throw UsageError("frame dimensions exceed the container limit");
  }
  for (const Frame& f : frames) {
    if (f.rows() != rows || f.cols() != cols) {
      throw DimensionError("all frames must share dimensions");
    }
    if (!all_finite(f)) {
      throw UsageError("frame contains non-finite values");
    }
  }

  const int multiple = cfg.pad_multiple();
  std::vector<Frame> padded;
  padded.reserve(frames.size());
  for (const Frame& f : frames) {
    padded.push_back(pad_to_multiple(f, multiple));
  }

  EncodedStream stream;
  stream.width = static_cast<std::uint16_t>(cols);
  stream.height = static_cast<std::uint16_t>(rows);
  stream.frame_count = static_cast<std::uint32_t>(frames.size());
  stream.config = cfg;
  if (recon_out) recon_out->clear();

  for (std::size_t t = 0; t + 1 < frames.size(); t += 2) {
    GopResult gop = encode_gop(padded[t], padded[t + 1], cfg);
    stream.gops.push_back(std::move(gop.payload));
    if (recon_out) {
      recon_out->push_back(crop(gop.recon_ref, rows, cols));
      recon_out->push_back(crop(gop.recon_target, rows, cols));
    }
  }
  if (frames.size() % 2 == 1) {
    GopPayload intra;
    intra.type = 1;
    intra.reference = intra_encode(padded.back(), cfg.threshold);
    if (recon_out) {
      recon_out->push_back(crop(
          intra_decode(intra.reference, padded.back().rows(),
                       padded.back().cols()),
          rows, cols));
    }
    stream.gops.push_back(std::move(intra));
  }
  return stream;
}

std::vector<Frame> decode_sequence(const EncodedStream& stream) {
  stream.config.validate();
  const int multiple = stream.config.pad_multiple();
  const int prows =
      ((stream.height + multiple - 1) / multiple) * multiple;
  const int pcols = ((stream.width + multiple - 1) / multiple) * multiple;
  const std::uint32_t expected_gops = (stream.frame_count + 1) / 2;
  if (stream.gops.size() != expected_gops) {
    throw StreamError("GOP count does not match frame count");
  }
  std::vector<Frame> frames;
  frames.reserve(stream.frame_count);
  for (std::size_t g = 0; g < stream.gops.size(); ++g) {
    const GopPayload& gop = stream.gops[g];
    const bool last = (g + 1 == stream.gops.size());
    const bool odd_tail = (stream.frame_count % 2 == 1) && last;
    if (odd_tail) {
      if (gop.type != 1) {
        throw StreamError("trailing frame must be intra-coded");
      }
      frames.push_back(
          crop(intra_decode(gop.reference, prows, pcols), stream.height,
               stream.width));
    } else {
      auto [ref, target] = decode_gop(gop, stream.config, prows, pcols);
      frames.push_back(crop(ref, stream.height, stream.width));
      frames.push_back(crop(target, stream.height, stream.width));
    }
  }
  return frames;
}

}  // namespace wmc
