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

#include "vpas/rng.hpp"
#include "vpas/error.hpp"

#include <openssl/rand.h>

#include <algorithm>

namespace vpas {

Rng Rng::system()
{
  Digest key{};
  if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1)
  {
    throw Error(ErrorCode::kIo, "system entropy unavailable");
  }
  return Rng(false, key);
}

Rng Rng::seeded(std::uint64_t seed)
{
  ByteWriter w;
  w.put_string("vpas-drbg-seed");
  w.put_u64(seed);
  return Rng(true, sha256(w.bytes()));
}

void Rng::refill()
{
  if (!seeded_)
  {
    if (RAND_bytes(block_.data(), static_cast<int>(block_.size())) != 1)
    {
      throw Error(ErrorCode::kIo, "system entropy unavailable");
    }
  }
  else
  {
    ByteWriter w;
    w.put_raw(key_);
    w.put_u64(counter_++);
    block_ = sha256(w.bytes());
  }
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out)
{
  std::size_t pos = 0;
  while (pos < out.size())
  {
    if (used_ == block_.size())
    {
      refill();
    }
    auto n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n,
                out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += n;
    pos += n;
  }
}

std::uint64_t Rng::next_u64()
{
  std::array<std::uint8_t, 8> raw{};
  fill(raw);
  std::uint64_t v = 0;
  for (auto b : raw)
  {
    v = (v << 8) | b;
  }
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound)
{
  if (bound == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "uniform: zero bound");
  }
  // rejection sampling on the largest multiple of bound
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;)
  {
    auto v = next_u64();
    if (v < limit)
    {
      return v % bound;
    }
  }
}

Rng Rng::fork(std::string_view label) const
{
  if (!seeded_)
  {
    return system();
  }
  ByteWriter w;
  w.put_raw(key_);
  w.put_string(label);
  return Rng(true, sha256(w.bytes()));
}

}  // namespace vpas
