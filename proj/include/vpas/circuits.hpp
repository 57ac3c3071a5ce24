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

// Built-in validation relations. Every relation exposes the message chunks as
// its first public inputs, followed by auxiliary statement values.

#include "vpas/merkle.hpp"
#include "vpas/r1cs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vpas::snark {

enum class RelationKind
{
  kTrivial,  // one constraint on chunk 0, other chunks unconstrained
  kRange,    // each chunk fits in value_bits
  kSnp,      // one-hot SNP tally with Merkle commitment
};

std::string  to_string(RelationKind kind);
RelationKind relation_from_string(std::string const &name);

struct RelationParams
{
  RelationKind kind         = RelationKind::kRange;
  std::size_t  n_chunks     = 0;
  unsigned     value_bits   = 0;  // kRange
  unsigned     merkle_depth = 8;  // kSnp

  /// Number of auxiliary public inputs after the chunks.
  std::size_t aux_count() const
  {
    return kind == RelationKind::kSnp ? 1 : 0;
  }

  friend bool operator==(RelationParams const &, RelationParams const &) = default;
};

/// Genotype x in {0, 1, 2} (AA, Aa, aa), population flag, and the inclusion
/// path of leaf H(x, is_case) in the client's data tree.
struct SnpWitness
{
  std::uint64_t genotype = 0;
  bool          is_case  = false;
  MerkleProof   path;
};

struct RelationInput
{
  std::vector<std::uint64_t> chunks;
  std::vector<Scalar>        aux;
  std::optional<SnpWitness>  snp;
};

/// Builds the constraint system; with `input == nullptr` only the shape is
/// meaningful (used for setup).
ConstraintSystem synthesize(RelationParams const &params, RelationInput const *input);

/// Shape of the SNP validity circuit.
ConstraintSystem build_valid_snp_circuit(std::size_t n_chunks, unsigned merkle_depth);

/// Committed leaf for one SNP record.
Scalar snp_leaf(std::uint64_t genotype, bool is_case);

/// Public chunk vector for one record: case one-hot, case count, control
/// one-hot, control count, then zero padding up to n_chunks.
std::vector<std::uint64_t> snp_chunks(std::uint64_t genotype, bool is_case, std::size_t n_chunks);

inline constexpr std::size_t kSnpChunks = 8;

}  // namespace vpas::snark
