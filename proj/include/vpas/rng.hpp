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

#include "vpas/bytes.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace vpas {

/// Randomness source. A seeded instance is a SHA-256 counter-mode DRBG used
/// for reproducible simulations; the default instance draws from the OS via
/// OpenSSL.
class Rng
{
public:
  static Rng system();
  static Rng seeded(std::uint64_t seed);

  void          fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);

  /// Independent child stream. For seeded generators the child depends only
  /// on this generator's seed and `label`, not on how much was drawn so far.
  Rng fork(std::string_view label) const;

  bool is_seeded() const
  {
    return seeded_;
  }

private:
  Rng(bool seeded, Digest key)
    : seeded_(seeded)
    , key_(key)
  {}

  void refill();

  bool          seeded_;
  Digest        key_;
  std::uint64_t counter_ = 0;
  Digest        block_{};
  std::size_t   used_ = 32;
};

}  // namespace vpas
