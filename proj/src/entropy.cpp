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

#include "wmc/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <queue>

#include "wmc/bitio.hpp"

namespace wmc {

QuantizedPlane quantize(const Mat& plane, double threshold, double scale) {
  if (threshold < 0.0) {
    throw UsageError("threshold must be nonnegative");
  }
  if (!(scale > 0.0)) {
    throw UsageError("scale must be positive");
  }
  QuantizedPlane out;
  out.rows = plane.rows();
  out.cols = plane.cols();
  out.scale = scale;
  out.values.resize(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const double x = plane.data()[i];
    if (std::abs(x) <= threshold) {
      out.values[i] = 0;
      continue;
    }
    double r = std::round(x * scale);  // halves away from zero
    if (r > 32767.0) {
      r = 32767.0;
      ++out.saturated;
    } else if (r < -32768.0) {
      r = -32768.0;
      ++out.saturated;
    }
    out.values[i] = static_cast<std::int16_t>(r);
  }
  return out;
}

Mat dequantize(const QuantizedPlane& plane) {
  Mat out(plane.rows, plane.cols);
  const double inv = 1.0 / plane.scale;
  for (std::size_t i = 0; i < plane.values.size(); ++i) {
    out.data()[i] = plane.values[i] * inv;
  }
  return out;
}

namespace {

// Token alphabet: 16 zero-run classes then 16 magnitude classes.
// Run class z covers runs in [2^(z-1), 2^z - 1] with z-1 extra bits;
// magnitude class m covers |v| in [2^(m-1), 2^m - 1] with a sign bit and
// m-1 extra bits.
constexpr int kRunBase = 0;
constexpr int kValueBase = 16;
constexpr int kAlphabet = 32;
constexpr std::uint32_t kMaxRun = 65535;

int bit_width_u32(std::uint32_t v) {
  int w = 0;
  while (v != 0) {
    v >>= 1;
    ++w;
  }
  return w;
}

struct TokenSink {
  std::vector<std::uint64_t> hist = std::vector<std::uint64_t>(kAlphabet, 0);
  // (token, extra_value, extra_bits) triples, flattened.
  std::vector<std::uint32_t> tokens;
  std::vector<std::uint32_t> extras;
  std::vector<std::uint8_t> extra_bits;

  void emit(int token, std::uint32_t extra, int nbits) {
    ++hist[token];
    tokens.push_back(static_cast<std::uint32_t>(token));
    extras.push_back(extra);
    extra_bits.push_back(static_cast<std::uint8_t>(nbits));
  }

  void run(std::uint32_t length) {
    while (length > 0) {
      const std::uint32_t chunk = std::min(length, kMaxRun);
      const int z = bit_width_u32(chunk);
      emit(kRunBase + z - 1, chunk - (1u << (z - 1)), z - 1);
      length -= chunk;
    }
  }

  void value(std::int32_t v) {
    const std::uint32_t mag = static_cast<std::uint32_t>(v < 0 ? -v : v);
    const int m = bit_width_u32(mag);
    const std::uint32_t extra = ((v < 0 ? 1u : 0u) << (m - 1)) |
                                (mag - (1u << (m - 1)));
    emit(kValueBase + m - 1, extra, m);  // sign bit + m-1 magnitude bits
  }
};

struct HeapNode {
  std::uint64_t weight;
  std::uint32_t order;  // creation sequence; makes ties deterministic
  int index;            // symbol for leaves, node id for internals
  bool leaf;
};

struct HeapCmp {
  bool operator()(const HeapNode& a, const HeapNode& b) const {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.order > b.order;
  }
};

}  // namespace

std::vector<int> huffman_code_lengths(const std::vector<std::uint64_t>& freq) {
  const int n = static_cast<int>(freq.size());
  std::vector<int> lengths(n, 0);
  std::vector<int> used;
  for (int i = 0; i < n; ++i) {
    if (freq[i] > 0) used.push_back(i);
  }
  if (used.empty()) return lengths;
  if (used.size() == 1) {
    lengths[used.front()] = 1;
    return lengths;
  }

  std::priority_queue<HeapNode, std::vector<HeapNode>, HeapCmp> heap;
  std::vector<std::pair<int, int>> children;  // internal node id -> pair
  std::vector<int> leaf_parent_depth;         // filled by walk below
  std::uint32_t order = 0;
  for (int s : used) {
    heap.push(HeapNode{freq[s], order++, s, true});
  }
  // ids: leaves are symbol indices; internals are n + child-pair index.
  std::vector<std::pair<HeapNode, HeapNode>> internal;
  while (heap.size() > 1) {
    HeapNode a = heap.top();
    heap.pop();
    HeapNode b = heap.top();
    heap.pop();
    internal.emplace_back(a, b);
    heap.push(HeapNode{a.weight + b.weight, order++,
                       static_cast<int>(internal.size()) - 1, false});
  }
  // Depth-first walk from the root accumulating depths.
  struct Walk {
    HeapNode node;
    int depth;
  };
  std::vector<Walk> stack{{heap.top(), 0}};
  while (!stack.empty()) {
    Walk w = stack.back();
    stack.pop_back();
    if (w.node.leaf) {
      lengths[w.node.index] = std::max(w.depth, 1);
    } else {
      const auto& pair = internal[w.node.index];
      stack.push_back(Walk{pair.first, w.depth + 1});
      stack.push_back(Walk{pair.second, w.depth + 1});
    }
  }
  return lengths;
}

namespace {

struct CanonicalCode {
  std::array<std::uint32_t, kAlphabet> bits{};
  std::array<int, kAlphabet> lens{};
};

// Canonical assignment: codes ordered by (length, symbol).
CanonicalCode canonical_from_lengths(const std::vector<int>& lengths) {
  CanonicalCode code;
  std::vector<std::pair<int, int>> order;  // (length, symbol)
  int max_len = 0;
  for (int s = 0; s < kAlphabet; ++s) {
    code.lens[s] = lengths[s];
    if (lengths[s] > 0) {
      order.emplace_back(lengths[s], s);
      max_len = std::max(max_len, lengths[s]);
    }
  }
  std::sort(order.begin(), order.end());
  std::uint32_t next = 0;
  int prev_len = order.empty() ? 0 : order.front().first;
  for (const auto& [len, sym] : order) {
    next <<= (len - prev_len);
    code.bits[sym] = next;
    ++next;
    prev_len = len;
  }
  return code;
}

void validate_lengths(const std::vector<int>& lengths, bool expect_symbols) {
  double kraft = 0.0;
  bool any = false;
  for (int len : lengths) {
    if (len < 0 || len > 32) {
      throw MalformedTableError("Huffman code length out of range");
    }
    if (len > 0) {
      any = true;
      kraft += std::ldexp(1.0, -len);
    }
  }
  if (!any && expect_symbols) {
    throw MalformedTableError("Huffman table empty but symbols expected");
  }
  if (kraft > 1.0 + 1e-12) {
    throw MalformedTableError("Huffman table violates the Kraft inequality");
  }
}

// Canonical decoder: first-code arithmetic per length.
struct CanonicalDecoder {
  std::array<std::uint32_t, 33> first{};
  std::array<std::uint32_t, 33> count{};
  std::array<std::uint32_t, 33> offset{};
  std::vector<int> symbols;  // sorted by (length, symbol)
  int max_len = 0;

  explicit CanonicalDecoder(const std::vector<int>& lengths) {
    std::vector<std::pair<int, int>> order;
    for (int s = 0; s < kAlphabet; ++s) {
      if (lengths[s] > 0) {
        order.emplace_back(lengths[s], s);
        max_len = std::max(max_len, lengths[s]);
      }
    }
    std::sort(order.begin(), order.end());
    for (const auto& [len, sym] : order) {
      symbols.push_back(sym);
      ++count[len];
    }
    std::uint32_t code = 0;
    std::uint32_t index = 0;
    for (int len = 1; len <= max_len; ++len) {
      first[len] = code;
      offset[len] = index;
      code = (code + count[len]) << 1;
      index += count[len];
    }
  }

  int decode(BitReader& reader) const {
    std::uint32_t code = 0;
    for (int len = 1; len <= max_len; ++len) {
      code = (code << 1) | static_cast<std::uint32_t>(reader.get_bit());
      if (count[len] != 0 && code - first[len] < count[len]) {
        return symbols[offset[len] + (code - first[len])];
      }
    }
    throw StreamError("invalid Huffman code in payload");
  }
};

void write_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void write_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
  }
}

struct ByteCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > size) {
      throw TruncatedStreamError("entropy payload truncated");
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
  float f32() {
    need(4);
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) {
      bits |= static_cast<std::uint32_t>(data[pos + i]) << (8 * i);
    }
    pos += 4;
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

}  // namespace

std::vector<std::uint8_t> entropy_encode(
    const std::vector<QuantizedPlane>& planes) {
  if (planes.size() > 65535) {
    throw UsageError("too many planes for one payload");
  }
  TokenSink sink;
  for (const QuantizedPlane& plane : planes) {
    if (plane.rows <= 0 || plane.cols <= 0 ||
        plane.values.size() !=
            static_cast<std::size_t>(plane.rows) * plane.cols) {
      throw DimensionError("quantized plane geometry is inconsistent");
    }
    std::uint32_t run = 0;
    for (std::int16_t v : plane.values) {
      if (v == 0) {
        ++run;
        continue;
      }
      sink.run(run);
      run = 0;
      sink.value(v);
    }
    sink.run(run);  // runs never cross plane boundaries
  }

  const std::vector<int> lengths = huffman_code_lengths(sink.hist);
  const CanonicalCode code = canonical_from_lengths(lengths);

  std::vector<std::uint8_t> out;
  write_u16(out, static_cast<std::uint16_t>(planes.size()));
  for (const QuantizedPlane& plane : planes) {
    write_u16(out, static_cast<std::uint16_t>(plane.rows));
    write_u16(out, static_cast<std::uint16_t>(plane.cols));
    write_f32(out, static_cast<float>(plane.scale));
  }
  for (int s = 0; s < kAlphabet; ++s) {
    out.push_back(static_cast<std::uint8_t>(lengths[s]));
  }
  BitWriter writer;
  for (std::size_t i = 0; i < sink.tokens.size(); ++i) {
    const std::uint32_t tok = sink.tokens[i];
    writer.put_bits(code.bits[tok], code.lens[tok]);
    if (sink.extra_bits[i] > 0) {
      writer.put_bits(sink.extras[i], sink.extra_bits[i]);
    }
  }
  const std::vector<std::uint8_t> payload = writer.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<QuantizedPlane> entropy_decode(const std::uint8_t* data,
                                           std::size_t size) {
  ByteCursor cur{data, size};
  const int n_planes = cur.u16();
  std::vector<QuantizedPlane> planes(n_planes);
  std::size_t total = 0;
  for (QuantizedPlane& plane : planes) {
    plane.rows = cur.u16();
    plane.cols = cur.u16();
    plane.scale = cur.f32();
    if (plane.rows <= 0 || plane.cols <= 0 || !(plane.scale > 0.0f)) {
      throw StreamError("invalid plane header in entropy payload");
    }
    total += static_cast<std::size_t>(plane.rows) * plane.cols;
  }
  std::vector<int> lengths(kAlphabet);
  for (int s = 0; s < kAlphabet; ++s) {
    lengths[s] = cur.u8();
  }
  validate_lengths(lengths, total > 0);
  const CanonicalDecoder decoder(lengths);

  BitReader reader(data + cur.pos, size - cur.pos);
  for (QuantizedPlane& plane : planes) {
    std::size_t remaining = static_cast<std::size_t>(plane.rows) * plane.cols;
    plane.values.reserve(remaining);
    while (remaining > 0) {
      const int token = decoder.decode(reader);
      if (token < kValueBase) {
        const int z = token - kRunBase + 1;
        const std::uint32_t extra =
            static_cast<std::uint32_t>(reader.get_bits(z - 1));
        const std::uint32_t run = (1u << (z - 1)) + extra;
        if (run > remaining) {
          throw StreamError("zero run overflows plane");
        }
        plane.values.insert(plane.values.end(), run, 0);
        remaining -= run;
      } else {
        const int m = token - kValueBase + 1;
        const std::uint32_t extra =
            static_cast<std::uint32_t>(reader.get_bits(m));
        const bool negative = (extra >> (m - 1)) & 1u;
        const std::uint32_t mag =
            (1u << (m - 1)) + (extra & ((1u << (m - 1)) - 1u));
        if (mag > 32768 || (!negative && mag > 32767)) {
          throw StreamError("decoded magnitude out of range");
        }
        plane.values.push_back(static_cast<std::int16_t>(
            negative ? -static_cast<std::int32_t>(mag)
                     : static_cast<std::int32_t>(mag)));
        --remaining;
      }
    }
  }
  return planes;
}

std::vector<QuantizedPlane> entropy_decode(
    const std::vector<std::uint8_t>& bytes) {
  return entropy_decode(bytes.data(), bytes.size());
}

}  // namespace wmc
