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

#include "vpas/dve.hpp"

#include <span>
#include <vector>

namespace vpas::aggregate {

using dve::Ciphertext;

/// Componentwise product (c0, every chunk and psi); plaintext chunks add.
Ciphertext agg(std::span<Ciphertext const> cts);

/// The aggregation claim: which inputs were combined and the claimed result.
/// Verification is recomputation, so no separate proof object exists.
struct AggregationRecord
{
  std::vector<Digest> input_digests;
  Ciphertext          result;

  Bytes                    serialize() const;
  static AggregationRecord deserialize(std::span<std::uint8_t const> bytes);
};

AggregationRecord make_record(std::span<Ciphertext const> cts);

/// Accepts iff the record names exactly `cts` in order and its result is
/// their product.
bool verify_agg(AggregationRecord const &record, std::span<Ciphertext const> cts);

}  // namespace vpas::aggregate
