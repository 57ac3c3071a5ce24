//------------------------------------------------------------------------------
//
//   Copyright 2026 The VPAS Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vpas {

using Bytes  = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

std::string to_hex(std::span<std::uint8_t const> data);
Bytes       from_hex(std::string_view hex);

Digest sha256(std::span<std::uint8_t const> data);

inline std::span<std::uint8_t const> as_bytes(std::string_view s)
{
  return {reinterpret_cast<std::uint8_t const *>(s.data()), s.size()};
}

/// Append-only little-endian encoder. Vectors carry a u64 length prefix, the
/// 8-byte envelope that shows up in every serialized size.
class ByteWriter
{
public:
  void put_u8(std::uint8_t v)
  {
    buf_.push_back(v);
  }
  void put_u64(std::uint64_t v);
  void put_raw(std::span<std::uint8_t const> data)
  {
    buf_.insert(buf_.end(), data.begin(), data.end());
  }
  void put_bytes(std::span<std::uint8_t const> data)
  {
    put_u64(data.size());
    put_raw(data);
  }
  void put_string(std::string_view s)
  {
    put_bytes(as_bytes(s));
  }

  Bytes const &bytes() const &
  {
    return buf_;
  }
  Bytes take() &&
  {
    return std::move(buf_);
  }

private:
  Bytes buf_;
};

/// Bounds-checked decoder over a byte span; throws Error(kDecode) on overrun.
class ByteReader
{
public:
  explicit ByteReader(std::span<std::uint8_t const> data)
    : data_(data)
  {}

  std::uint8_t                  get_u8();
  std::uint64_t                 get_u64();
  std::span<std::uint8_t const> get_raw(std::size_t n);
  Bytes                         get_bytes();
  std::string                   get_string();

  /// Reads a u64 length prefix and rejects counts that could not possibly fit
  /// in the remaining input given `min_element_size` bytes per element.
  std::size_t get_count(std::size_t min_element_size);

  bool at_end() const
  {
    return pos_ == data_.size();
  }
  void expect_end() const;

private:
  std::span<std::uint8_t const> data_;
  std::size_t                   pos_ = 0;
};

}  // namespace vpas
