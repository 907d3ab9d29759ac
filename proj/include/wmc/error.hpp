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

#ifndef WMC_ERROR_HPP_
#define WMC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmc {

// Base class for all wmcodec errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or inadmissible matrix/frame dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Arguments violate an interface contract (empty input, bad range, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Bitstream-level failure (bad magic, corrupt payload, ...).
class StreamError : public Error {
 public:
  using Error::Error;
};

// Payload ended before all declared content was read.
class TruncatedStreamError : public StreamError {
 public:
  using StreamError::StreamError;
};

// Entropy code table failed validation (bad lengths, Kraft violation).
class MalformedTableError : public StreamError {
 public:
  using StreamError::StreamError;
};

}  // namespace wmc

#endif  // WMC_ERROR_HPP_
