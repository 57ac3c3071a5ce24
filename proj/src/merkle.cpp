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

#include "vpas/merkle.hpp"
#include "vpas/error.hpp"

namespace vpas::snark {
namespace {

Scalar permute(Scalar x, Scalar const &key)
{
  for (auto const &c : hash_round_constants())
  {
    Scalar t  = x + key + c;
    Scalar t2 = t.square();
    x         = t2.square() * t;
  }
  return x + key;
}

LinComb permute_gadget(ConstraintSystem &cs, LinComb x, LinComb const &key)
{
  for (auto const &c : hash_round_constants())
  {
    LinComb t  = x + key + LinComb::constant(c);
    Scalar  tv = cs.eval(t);
    Var     t2 = cs.alloc_witness(tv.square());
    Var     t4 = cs.alloc_witness(tv.square().square());
    Var     t5 = cs.alloc_witness(tv.square().square() * tv);
    cs.enforce(t, t, t2);
    cs.enforce(t2, t2, t4);
    cs.enforce(t4, t, t5);
    x = t5;
  }
  return x + key;
}

}  // namespace

std::vector<Scalar> const &hash_round_constants()
{
  static std::vector<Scalar> const constants = [] {
    std::vector<Scalar> out;
    out.reserve(kHashRounds);
    for (std::uint64_t i = 0; i < kHashRounds; ++i)
    {
      ByteWriter w;
      w.put_u64(i);
      out.push_back(algebra::hash_to_scalar("vpas-hash", w.bytes()));
    }
    return out;
  }();
  return constants;
}

Scalar algebraic_hash(std::span<Scalar const> inputs)
{
  if (inputs.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "algebraic_hash: empty input");
  }
  Scalar h;
  for (auto const &m : inputs)
  {
    h = permute(m, h) + h + m;
  }
  return h;
}

LinComb algebraic_hash_gadget(ConstraintSystem &cs, std::span<LinComb const> inputs)
{
  if (inputs.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "algebraic_hash: empty input");
  }
  LinComb h = LinComb::constant(Scalar{});
  for (auto const &m : inputs)
  {
    h = (permute_gadget(cs, m, h) + h + m).compact();
  }
  return h;
}

MerkleTree::MerkleTree(unsigned depth)
  : depth_(depth)
  , levels_(depth + 1)
{
  if (depth == 0 || depth > 32)
  {
    throw Error(ErrorCode::kInvalidArgument, "merkle depth must be in [1, 32]");
  }
  zeros_.push_back(Scalar{});
  for (unsigned i = 0; i < depth; ++i)
  {
    std::array<Scalar, 2> pair{zeros_.back(), zeros_.back()};
    zeros_.push_back(algebraic_hash(pair));
  }
}

Scalar MerkleTree::node(unsigned level, std::uint64_t index) const
{
  auto const &row = levels_[level];
  return index < row.size() ? row[index] : zeros_[level];
}

std::uint64_t MerkleTree::insert(Scalar const &leaf)
{
  std::uint64_t index = levels_[0].size();
  if (index >= capacity())
  {
    throw Error(ErrorCode::kTreeFull, "merkle tree is full");
  }
  levels_[0].push_back(leaf);
  std::uint64_t pos = index;
  for (unsigned level = 0; level < depth_; ++level)
  {
    std::uint64_t         parent = pos >> 1;
    std::array<Scalar, 2> pair{node(level, parent * 2), node(level, parent * 2 + 1)};
    Scalar                h = algebraic_hash(pair);
    auto                 &up = levels_[level + 1];
    if (parent < up.size())
    {
      up[parent] = h;
    }
    else
    {
      up.push_back(h);
    }
    pos = parent;
  }
  return index;
}

Scalar MerkleTree::root() const
{
  return node(depth_, 0);
}

MerkleProof MerkleTree::prove(std::uint64_t index) const
{
  if (index >= size())
  {
    throw Error(ErrorCode::kInvalidArgument, "merkle proof for an empty slot");
  }
  MerkleProof proof;
  proof.index = index;
  for (unsigned level = 0; level < depth_; ++level)
  {
    proof.siblings.push_back(node(level, (index >> level) ^ 1));
  }
  return proof;
}

Scalar MerkleTree::root_from_path(Scalar const &leaf, MerkleProof const &proof)
{
  Scalar cur = leaf;
  for (std::size_t level = 0; level < proof.siblings.size(); ++level)
  {
    bool                  right = (proof.index >> level) & 1;
    std::array<Scalar, 2> pair  = right ? std::array<Scalar, 2>{proof.siblings[level], cur}
                                        : std::array<Scalar, 2>{cur, proof.siblings[level]};
    cur = algebraic_hash(pair);
  }
  return cur;
}

bool MerkleTree::verify(Scalar const &leaf, Scalar const &root, MerkleProof const &proof)
{
  if (proof.siblings.size() >= 64 || (proof.index >> proof.siblings.size()) != 0)
  {
    return false;
  }
  return root_from_path(leaf, proof) == root;
}

}  // namespace vpas::snark
