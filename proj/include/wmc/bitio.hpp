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

#ifndef WMC_BITIO_HPP_
#define WMC_BITIO_HPP_

#include <cstdint>
#include <vector>

#include "wmc/error.hpp"

namespace wmc {

// Packs bits most-significant-bit-first into a byte vector.
class BitWriter {
 public:
  void put_bit(int bit) { put_bits(bit & 1u, 1); }

  void put_bits(std::uint64_t value, int nbits);

  // Pads the final partial byte with zero bits.
  std::vector<std::uint8_t> take();

  std::uint64_t bit_count() const { return bit_count_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_count_ = 0;
  int pending_bits_ = 0;
  std::uint8_t pending_ = 0;
};

// MSB-first bit reader; throws TruncatedStreamError past the end.
class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}
  explicit BitReader(const std::vector<std::uint8_t>& bytes)
      : BitReader(bytes.data(), bytes.size()) {}

  int get_bit();
  std::uint64_t get_bits(int nbits);

  std::uint64_t bit_pos() const { return bit_pos_; }
  std::uint64_t bits_left() const { return size_ * 8 - bit_pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::uint64_t bit_pos_ = 0;
};

// Order-0 exponential Golomb: value v is written as bitlength(v+1) - 1
// zeros followed by the bits of v + 1. Value 0 is the single bit '1'.
void put_exp_golomb(BitWriter& writer, std::uint64_t value);
std::uint64_t get_exp_golomb(BitReader& reader);

// Signed-to-unsigned zigzag: v >= 0 -> 2v, v < 0 -> -2v - 1.
std::uint64_t zigzag_encode(std::int64_t v);
std::int64_t zigzag_decode(std::uint64_t u);

}  // namespace wmc

#endif  // WMC_BITIO_HPP_
