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

#include "vpas/algebra.hpp"
#include "vpas/r1cs.hpp"

#include <vector>

namespace vpas::snark {

/// Keyed permutation rounds: x <- (x + k + c_i)^5, 91 rounds, then + k.
/// 5 is the smallest exponent above 2 coprime to p - 1.
inline constexpr std::size_t   kHashRounds   = 91;
inline constexpr std::uint64_t kHashExponent = 5;

std::vector<Scalar> const &hash_round_constants();

/// Miyaguchi-Preneel chaining over the keyed permutation:
/// h_0 = 0, h_{j+1} = E_{h_j}(m_j) + h_j + m_j. Inputs must be nonempty.
Scalar algebraic_hash(std::span<Scalar const> inputs);

/// In-circuit version; 3 constraints per round, 273 per absorbed input.
LinComb algebraic_hash_gadget(ConstraintSystem &cs, std::span<LinComb const> inputs);

struct MerkleProof
{
  std::uint64_t       index = 0;
  std::vector<Scalar> siblings;  // leaf level first
};

/// Fixed-depth binary tree over algebraic_hash; unused leaves are zero.
class MerkleTree
{
public:
  explicit MerkleTree(unsigned depth);

  unsigned depth() const
  {
    return depth_;
  }
  std::size_t size() const
  {
    return levels_[0].size();
  }
  std::uint64_t capacity() const
  {
    return std::uint64_t{1} << depth_;
  }

  /// Places `leaf` in the next free slot; throws Error(kTreeFull).
  std::uint64_t insert(Scalar const &leaf);
  Scalar        root() const;
  MerkleProof   prove(std::uint64_t index) const;

  static bool   verify(Scalar const &leaf, Scalar const &root, MerkleProof const &proof);
  static Scalar root_from_path(Scalar const &leaf, MerkleProof const &proof);

private:
  Scalar node(unsigned level, std::uint64_t index) const;

  unsigned                         depth_;
  std::vector<std::vector<Scalar>> levels_;  // levels_[0] = leaves
  std::vector<Scalar>              zeros_;   // root of an all-zero subtree per level
};

}  // namespace vpas::snark
