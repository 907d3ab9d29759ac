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
// Motion-compensated temporal filtering codec. Frames pair into GOPs
// (reference, target); the reference is intra-coded as a 3-level pyramid,
// the target is predicted from the reconstructed reference by in-band
// block matching, and the error bands are coded after further spatial
// decomposition of their approximation plane. Encoding is closed-loop:
// motion estimation and compensation run on the same reconstructed
// reference the decoder will see.

#ifndef WMC_CODEC_HPP_
#define WMC_CODEC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "wmc/entropy.hpp"
#include "wmc/motion.hpp"

namespace wmc {

// Spatial decomposition depth used for intra-coded reference frames.
inline constexpr int kIntraLevels = 3;

enum class MatchMode : std::uint8_t {
  kInband,      // subpixel in-band matching
  kBandToBand,  // integer subband-sample baseline
};

struct CodecConfig {
  int block_size = 8;           // subband samples
  int precision = 2;            // h: 0..3
  int search_range = 15;        // pixels
  float threshold = 0.0f;       // quantizer dead zone
  int extra_spatial_levels = 2; // residual approximation decomposition
  MatchMode match_mode = MatchMode::kInband;

  void validate() const;

  SearchParams search_params() const {
    return SearchParams{search_range, precision, block_size};
  }
  // Frames are padded to this multiple before coding.
  int pad_multiple() const;
};

// One group of pictures: a reference/target pair, or a lone intra frame.
struct GopPayload {
  std::uint8_t type = 0;  // 0 = pair, 1 = intra-only
  std::vector<std::uint8_t> reference;
  std::vector<std::uint8_t> mv;
  std::vector<std::uint8_t> residual;
};

struct EncodedStream {
  std::uint16_t width = 0;   // original (pre-padding) dimensions
  std::uint16_t height = 0;
  std::uint32_t frame_count = 0;
  CodecConfig config;
  std::vector<GopPayload> gops;
};

// Bit-exact container layout (little-endian): magic "WMC1", version u8,
// width u16, height u16, frame_count u32, block_size u8, precision u8,
// search_range u8, threshold f32, extra_levels u8; then per GOP a type
// byte and three u32-length-prefixed payloads (reference, MV, residual).
std::vector<std::uint8_t> serialize_stream(const EncodedStream& stream);
EncodedStream parse_stream(const std::uint8_t* data, std::size_t size);
EncodedStream parse_stream(const std::vector<std::uint8_t>& bytes);

// Motion field coding: raster order, per-component differential vs. the
// previous block, zigzag-mapped, order-0 exp-Golomb.
std::vector<std::uint8_t> encode_mv(const MotionField& field);
MotionField decode_mv(const std::vector<std::uint8_t>& bytes, int band_rows,
                      int band_cols, int block_size, int precision);

// Intra coding of one (padded) frame: kIntraLevels-deep pyramid, each
// plane thresholded and coded at the scale 2^level that makes integer
// input exact at threshold 0.
std::vector<std::uint8_t> intra_encode(const Frame& padded, float threshold);
Frame intra_decode(const std::vector<std::uint8_t>& payload, int rows,
                   int cols);

struct GopResult {
  GopPayload payload;
  Frame recon_ref;     // padded reconstruction
  Frame recon_target;
};

// Encodes one reference/target pair (both already padded to the config's
// multiple) and returns the payloads plus the encoder-side reconstruction.
GopResult encode_gop(const Frame& ref, const Frame& target,
                     const CodecConfig& cfg);

// Decodes one pair GOP back to (reference, target), still padded.
std::pair<Frame, Frame> decode_gop(const GopPayload& gop,
                                   const CodecConfig& cfg, int padded_rows,
                                   int padded_cols);

// Pixel-domain view of a pair GOP's coded prediction error (synthesis of
// the residual bands alone), e.g. for residual image dumps.
Frame decode_gop_residual(const GopPayload& gop, const CodecConfig& cfg,
                          int padded_rows, int padded_cols);

// Whole-sequence encode: frames pair as (2t, 2t+1); an odd trailing frame
// is intra-coded. When recon_out is non-null it receives the encoder-side
// reconstruction of every frame (cropped to the input size).
EncodedStream encode_sequence(const std::vector<Frame>& frames,
                              const CodecConfig& cfg,
                              std::vector<Frame>* recon_out = nullptr);

std::vector<Frame> decode_sequence(const EncodedStream& stream);

}  // namespace wmc

#endif  // WMC_CODEC_HPP_
