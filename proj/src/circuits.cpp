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

#include "vpas/circuits.hpp"
#include "vpas/error.hpp"

namespace vpas::snark {
namespace {

std::vector<Var> alloc_statement(ConstraintSystem &cs, RelationParams const &params,
                                 RelationInput const *input)
{
  if (input != nullptr &&
      (input->chunks.size() != params.n_chunks || input->aux.size() != params.aux_count()))
  {
    throw Error(ErrorCode::kShapeMismatch, "relation input does not match its parameters");
  }
  std::vector<Var> vars;
  for (std::size_t i = 0; i < params.n_chunks; ++i)
  {
    vars.push_back(cs.alloc_public(input ? Scalar::from_u64(input->chunks[i]) : Scalar{}));
  }
  for (std::size_t i = 0; i < params.aux_count(); ++i)
  {
    vars.push_back(cs.alloc_public(input ? input->aux[i] : Scalar{}));
  }
  return vars;
}

void build_trivial(ConstraintSystem &cs, std::vector<Var> const &stmt)
{
  cs.enforce(stmt[0], Var::one(), stmt[0]);
}

void build_range(ConstraintSystem &cs, RelationParams const &params, std::vector<Var> const &stmt)
{
  if (params.value_bits == 0 || params.value_bits > 32)
  {
    throw Error(ErrorCode::kInvalidArgument, "range relation needs value_bits in [1, 32]");
  }
  for (std::size_t i = 0; i < params.n_chunks; ++i)
  {
    auto const value = cs.value(stmt[i]).to_u64().value_or(0);
    LinComb    sum;
    for (unsigned j = 0; j < params.value_bits; ++j)
    {
      Var bit = cs.alloc_witness(Scalar::from_u64((value >> j) & 1));
      cs.enforce(bit, bit, bit);
      sum.add(bit, Scalar::from_u64(std::uint64_t{1} << j));
    }
    cs.enforce(sum, Var::one(), stmt[i]);
  }
}

void build_snp(ConstraintSystem &cs, RelationParams const &params, std::vector<Var> const &stmt,
               RelationInput const *input)
{
  if (params.n_chunks < kSnpChunks)
  {
    throw Error(ErrorCode::kInvalidArgument, "SNP relation needs at least 8 chunks");
  }
  SnpWitness const *w = (input != nullptr && input->snp) ? &*input->snp : nullptr;
  if (input != nullptr && w == nullptr)
  {
    throw Error(ErrorCode::kInvalidArgument, "SNP relation needs a record witness");
  }
  if (w != nullptr && w->path.siblings.size() != params.merkle_depth)
  {
    throw Error(ErrorCode::kShapeMismatch, "merkle path length differs from circuit depth");
  }

  Scalar const two_inv = Scalar::from_u64(2).inverse();

  Var x = cs.alloc_witness(w ? Scalar::from_u64(w->genotype) : Scalar{});
  Var p = cs.alloc_witness(w && w->is_case ? Scalar::one() : Scalar{});

  // x in {0,1,2}: t = x(x-1), t(x-2) = 0
  Scalar xv = cs.value(x);
  Var    t  = cs.alloc_witness(xv * (xv - Scalar::one()));
  cs.enforce(x, LinComb(x) - LinComb::constant(1), t);
  cs.enforce(t, LinComb(x) - LinComb::constant(2), LinComb::constant(0));
  cs.enforce(p, p, p);

  // one-hot encoding as affine functions of (t, x)
  std::array<LinComb, 3> onehot{
      (LinComb(t) - LinComb(x) * Scalar::from_u64(2) + LinComb::constant(2)) * two_inv,
      LinComb(x) - LinComb(t),
      LinComb(t) * two_inv,
  };
  LinComb not_p = LinComb::constant(1) - LinComb(p);
  for (std::size_t k = 0; k < 3; ++k)
  {
    cs.enforce(onehot[k], p, stmt[k]);
    cs.enforce(onehot[k], not_p, stmt[4 + k]);
  }
  cs.enforce(p, Var::one(), stmt[3]);
  cs.enforce(not_p, Var::one(), stmt[7]);
  for (std::size_t i = kSnpChunks; i < params.n_chunks; ++i)
  {
    cs.enforce(stmt[i], Var::one(), LinComb::constant(0));
  }

  // inclusion of H(x, p) under the public root
  std::array<LinComb, 2> leaf_in{x, p};
  LinComb                cur = algebraic_hash_gadget(cs, leaf_in);
  for (unsigned level = 0; level < params.merkle_depth; ++level)
  {
    Scalar bit_v = w ? Scalar::from_u64((w->path.index >> level) & 1) : Scalar{};
    Scalar sib_v = w ? w->path.siblings[level] : Scalar{};
    Var    b     = cs.alloc_witness(bit_v);
    Var    s     = cs.alloc_witness(sib_v);
    cs.enforce(b, b, b);
    LinComb diff = LinComb(s) - cur;
    Var     d    = cs.alloc_witness(bit_v * cs.eval(diff));
    cs.enforce(b, diff, d);
    std::array<LinComb, 2> pair{cur + d, LinComb(s) - d};
    cur = algebraic_hash_gadget(cs, pair);
  }
  cs.enforce(cur, Var::one(), stmt[params.n_chunks]);
}

}  // namespace

std::string to_string(RelationKind kind)
{
  switch (kind)
  {
  case RelationKind::kTrivial:
    return "trivial";
  case RelationKind::kRange:
    return "range";
  case RelationKind::kSnp:
    return "snp";
  }
  return "unknown";
}

RelationKind relation_from_string(std::string const &name)
{
  if (name == "trivial")
  {
    return RelationKind::kTrivial;
  }
  if (name == "range")
  {
    return RelationKind::kRange;
  }
  if (name == "snp")
  {
    return RelationKind::kSnp;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown relation '" + name + "'");
}

ConstraintSystem synthesize(RelationParams const &params, RelationInput const *input)
{
  if (params.n_chunks == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "relation needs at least one chunk");
  }
  ConstraintSystem cs;
  auto             stmt = alloc_statement(cs, params, input);
  switch (params.kind)
  {
  case RelationKind::kTrivial:
    build_trivial(cs, stmt);
    break;
  case RelationKind::kRange:
    build_range(cs, params, stmt);
    break;
  case RelationKind::kSnp:
    build_snp(cs, params, stmt, input);
    break;
  }
  return cs;
}

ConstraintSystem build_valid_snp_circuit(std::size_t n_chunks, unsigned merkle_depth)
{
  return synthesize({RelationKind::kSnp, n_chunks, 0, merkle_depth}, nullptr);
}

Scalar snp_leaf(std::uint64_t genotype, bool is_case)
{
  std::array<Scalar, 2> in{Scalar::from_u64(genotype), is_case ? Scalar::one() : Scalar{}};
  return algebraic_hash(in);
}

std::vector<std::uint64_t> snp_chunks(std::uint64_t genotype, bool is_case, std::size_t n_chunks)
{
  if (genotype > 2)
  {
    throw Error(ErrorCode::kInvalidArgument, "genotype must be 0, 1 or 2");
  }
  if (n_chunks < kSnpChunks)
  {
    throw Error(ErrorCode::kInvalidArgument, "SNP messages need at least 8 chunks");
  }
  std::vector<std::uint64_t> out(n_chunks, 0);
  std::size_t const          base = is_case ? 0 : 4;
  out[base + genotype]            = 1;
  out[base + 3]                   = 1;
  return out;
}

}  // namespace vpas::snark
