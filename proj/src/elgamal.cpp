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

#include "vpas/elgamal.hpp"
#include "vpas/error.hpp"

namespace vpas::elgamal {
namespace {

void check_chunk_bits(unsigned chunk_bits)
{
  if (chunk_bits == 0 || chunk_bits > algebra::BsgsTable::kMaxBits)
  {
    throw Error(ErrorCode::kInvalidArgument, "chunk_bits must be in [1, 40]");
  }
}

}  // namespace

Keypair Keypair::generate(Rng &rng)
{
  Scalar sk = Scalar::random_nonzero(rng);
  return {sk, G1::generator() * sk};
}

DkgResult dkg(std::size_t n, Rng &rng)
{
  if (n == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "dkg needs at least one client");
  }
  DkgResult out;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.keypairs.push_back(Keypair::generate(rng));
    out.pk_alpha += out.keypairs.back().pk;
  }
  return out;
}

Ciphertext encrypt(std::uint64_t m, G1 const &pk_alpha, unsigned chunk_bits, Rng &rng)
{
  check_chunk_bits(chunk_bits);
  if (m >> chunk_bits != 0)
  {
    throw Error(ErrorCode::kNotInRange, "plaintext exceeds chunk width");
  }
  Scalar r = Scalar::random(rng);
  G1     g = G1::generator();
  return {g * r, g * Scalar::from_u64(m) + pk_alpha * r};
}

Ciphertext add(Ciphertext const &a, Ciphertext const &b)
{
  return {a.c1 + b.c1, a.c2 + b.c2};
}

ReencShare reenc_share(Ciphertext const &ct, Scalar const &sk_i, G1 const &pk_beta, Rng &rng)
{
  Scalar z = Scalar::random(rng);
  return {G1::generator() * z, ct.c1 * (-sk_i) + pk_beta * z};
}

Ciphertext combine_reenc(Ciphertext const &ct, std::span<ReencShare const> shares)
{
  if (shares.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "combine_reenc: no shares");
  }
  Ciphertext out{G1{}, ct.c2};
  for (auto const &s : shares)
  {
    out.c1 += s.w1;
    out.c2 += s.w2;
  }
  return out;
}

std::uint64_t decrypt(Scalar const &sk, Ciphertext const &ct, unsigned chunk_bits)
{
  check_chunk_bits(chunk_bits);
  auto table = algebra::BsgsTable::cached(G1::generator(), chunk_bits);
  return table->dlog(ct.c2 - ct.c1 * sk);
}

}  // namespace vpas::elgamal
