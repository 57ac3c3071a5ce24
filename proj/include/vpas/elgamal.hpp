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

// Threshold exponential ElGamal (all-of-n), the privacy-only baseline.
// The generator g is the fixed G1 generator.

#include "vpas/algebra.hpp"

#include <span>
#include <vector>

namespace vpas::elgamal {

using algebra::G1;
using algebra::Scalar;

struct Keypair
{
  Scalar sk;
  G1     pk;

  static Keypair generate(Rng &rng);
};

struct Ciphertext
{
  G1 c1;
  G1 c2;

  friend bool operator==(Ciphertext const &, Ciphertext const &) = default;
};

struct DkgResult
{
  G1                   pk_alpha;
  std::vector<Keypair> keypairs;
};

/// Independent keypairs whose public keys multiply into pk_alpha.
DkgResult dkg(std::size_t n, Rng &rng);

Ciphertext encrypt(std::uint64_t m, G1 const &pk_alpha, unsigned chunk_bits, Rng &rng);
Ciphertext add(Ciphertext const &a, Ciphertext const &b);

struct ReencShare
{
  G1 w1;  // g^z
  G1 w2;  // C1^{-sk_i} * pk_beta^z
};

ReencShare reenc_share(Ciphertext const &ct, Scalar const &sk_i, G1 const &pk_beta, Rng &rng);

/// (prod w1, C2 * prod w2); the result is encrypted under pk_beta once every
/// client's share is present.
Ciphertext combine_reenc(Ciphertext const &ct, std::span<ReencShare const> shares);

/// Discrete log of C2 / C1^sk over [0, 2^chunk_bits); Error(kNotInRange) otherwise.
std::uint64_t decrypt(Scalar const &sk, Ciphertext const &ct, unsigned chunk_bits);

}  // namespace vpas::elgamal
