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

#include "vpas/bytes.hpp"
#include "vpas/error.hpp"

#include <openssl/evp.h>

namespace vpas {

char const *to_string(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kInvalidArgument:
    return "InvalidArgument";
  case ErrorCode::kShapeMismatch:
    return "ShapeMismatch";
  case ErrorCode::kNotInRange:
    return "NotInRange";
  case ErrorCode::kUnsatisfied:
    return "Unsatisfied";
  case ErrorCode::kDecode:
    return "Decode";
  case ErrorCode::kPokRejected:
    return "PokRejected";
  case ErrorCode::kSubmissionRejected:
    return "SubmissionRejected";
  case ErrorCode::kAggregateRejected:
    return "AggregateRejected";
  case ErrorCode::kTreeFull:
    return "TreeFull";
  case ErrorCode::kDegenerate:
    return "Degenerate";
  case ErrorCode::kParse:
    return "Parse";
  case ErrorCode::kIo:
    return "Io";
  }
  return "Unknown";
}

std::string to_hex(std::span<std::uint8_t const> data)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string           out;
  out.reserve(data.size() * 2);
  for (auto b : data)
  {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int nibble(char c)
{
  if (c >= '0' && c <= '9')
  {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f')
  {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F')
  {
    return c - 'A' + 10;
  }
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex)
{
  if (hex.size() % 2 != 0)
  {
    throw Error(ErrorCode::kDecode, "hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
    {
      throw Error(ErrorCode::kDecode, "invalid hex digit");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Digest sha256(std::span<std::uint8_t const> data)
{
  Digest       out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1)
  {
    throw std::runtime_error("EVP_Digest failed");
  }
  return out;
}

void ByteWriter::put_u64(std::uint64_t v)
{
  for (int i = 0; i < 8; ++i)
  {
    buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint8_t ByteReader::get_u8()
{
  return get_raw(1)[0];
}

std::uint64_t ByteReader::get_u64()
{
  auto          raw = get_raw(8);
  std::uint64_t v   = 0;
  for (int i = 7; i >= 0; --i)
  {
    v = (v << 8) | raw[static_cast<std::size_t>(i)];
  }
  return v;
}

std::span<std::uint8_t const> ByteReader::get_raw(std::size_t n)
{
  if (n > data_.size() - pos_)
  {
    throw Error(ErrorCode::kDecode, "unexpected end of input");
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

Bytes ByteReader::get_bytes()
{
  auto n   = get_count(1);
  auto raw = get_raw(n);
  return {raw.begin(), raw.end()};
}

std::string ByteReader::get_string()
{
  auto n   = get_count(1);
  auto raw = get_raw(n);
  return {raw.begin(), raw.end()};
}

std::size_t ByteReader::get_count(std::size_t min_element_size)
{
  auto n         = get_u64();
  auto remaining = data_.size() - pos_;
  if (min_element_size != 0 && n > remaining / min_element_size)
  {
    throw Error(ErrorCode::kDecode, "length prefix exceeds input");
  }
  return static_cast<std::size_t>(n);
}

void ByteReader::expect_end() const
{
  if (!at_end())
  {
    throw Error(ErrorCode::kDecode, "trailing bytes after value");
  }
}

}  // namespace vpas
