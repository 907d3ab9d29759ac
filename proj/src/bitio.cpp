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

#include "wmc/bitio.hpp"

namespace wmc {

void BitWriter::put_bits(std::uint64_t value, int nbits) {
  if (nbits < 0 || nbits > 64) {
    throw UsageError("bit count out of range");
  }
  for (int i = nbits - 1; i >= 0; --i) {
    pending_ = static_cast<std::uint8_t>((pending_ << 1) |
                                         ((value >> i) & 1u));
    if (++pending_bits_ == 8) {
      bytes_.push_back(pending_);
      pending_ = 0;
      pending_bits_ = 0;
    }
  }
  bit_count_ += nbits;
}

std::vector<std::uint8_t> BitWriter::take() {
  if (pending_bits_ > 0) {
    bytes_.push_back(static_cast<std::uint8_t>(pending_ << (8 - pending_bits_)));
    pending_ = 0;
    pending_bits_ = 0;
  }
  return std::move(bytes_);
}

int BitReader::get_bit() {
  if (bit_pos_ >= size_ * 8) {
    throw TruncatedStreamError("bitstream ended early");
  }
  const std::uint8_t byte = data_[bit_pos_ >> 3];
  const int bit = (byte >> (7 - (bit_pos_ & 7))) & 1;
  ++bit_pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(int nbits) {
  if (nbits < 0 || nbits > 64) {
    throw UsageError("bit count out of range");
  }
  std::uint64_t value = 0;
  for (int i = 0; i < nbits; ++i) {
    value = (value << 1) | static_cast<std::uint64_t>(get_bit());
  }
  return value;
}

void put_exp_golomb(BitWriter& writer, std::uint64_t value) {
  const std::uint64_t plus1 = value + 1;
  int width = 0;
  for (std::uint64_t v = plus1; v != 0; v >>= 1) ++width;
  writer.put_bits(0, width - 1);
  writer.put_bits(plus1, width);
}

std::uint64_t get_exp_golomb(BitReader& reader) {
  int zeros = 0;
  while (reader.get_bit() == 0) {
    if (++zeros > 63) {
      throw StreamError("exp-Golomb prefix too long");
    }
  }
  std::uint64_t value = 1;
  for (int i = 0; i < zeros; ++i) {
    value = (value << 1) | static_cast<std::uint64_t>(reader.get_bit());
  }
  return value - 1;
}

std::uint64_t zigzag_encode(std::int64_t v) {
  return v >= 0 ? 2ull * static_cast<std::uint64_t>(v)
                : 2ull * static_cast<std::uint64_t>(-(v + 1)) + 1ull;
}

std::int64_t zigzag_decode(std::uint64_t u) {
  return (u & 1) ? -static_cast<std::int64_t>(u >> 1) - 1
                 : static_cast<std::int64_t>(u >> 1);
}

}  // namespace wmc
