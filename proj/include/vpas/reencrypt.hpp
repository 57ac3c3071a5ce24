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

// Verifiable re-encryption of an aggregate to the collector key pk_beta.
//
// Client j publishes w1 = g^z and w2_i = C1^{-s_i} * pk_beta^z with C1 = c0 of
// the aggregate, plus a Fiat-Shamir proof that the s_i match its published
// X_i = X0^{s_i} and that one z is used throughout.

#include "vpas/dve.hpp"

#include <span>
#include <vector>

namespace vpas::reencrypt {

using algebra::G1;
using algebra::Scalar;

struct PokPublics
{
  G1                   x0;
  std::span<G1 const>  x;
  G1                   pk_beta;
  G1                   c1;
  G1                   w1;
  std::span<G1 const>  w2;
};

struct PokProof
{
  std::vector<G1>     commit_x;    // X0^{a_i}
  G1                  commit_w1;   // g^b
  std::vector<G1>     commit_rel;  // C1^{-a_i} * pk_beta^b
  Scalar              challenge;
  std::vector<Scalar> resp_s;  // a_i + c * s_i
  Scalar              resp_z;  // b + c * z

  void            serialize(ByteWriter &w) const;
  Bytes           serialize() const;
  static PokProof deserialize(ByteReader &r);

  friend bool operator==(PokProof const &, PokProof const &) = default;
};

/// Challenge over the ordered transcript, domain tag "vpas-pok".
Scalar pok_challenge(PokPublics const &pub, std::span<G1 const> commit_x, G1 const &commit_w1,
                     std::span<G1 const> commit_rel);

PokProof pok_prove(std::span<Scalar const> s, Scalar const &z, PokPublics const &pub, Rng &rng);
bool     pok_verify(PokProof const &proof, PokPublics const &pub);

struct ReencShare
{
  G1              w1;
  std::vector<G1> w2;
  PokProof        proof;

  Bytes             serialize() const;
  static ReencShare deserialize(std::span<std::uint8_t const> bytes);

  std::size_t w1_size() const
  {
    return G1::kCompressedSize;
  }
  std::size_t w2_size() const
  {
    return 8 + G1::kCompressedSize * w2.size();
  }
  std::size_t proof_size() const
  {
    return proof.serialize().size();
  }
};

ReencShare gen_share(dve::Ciphertext const &ct, dve::PartialKey const &partial,
                     dve::SecretKey const &sk, G1 const &pk_beta, Rng &rng);

/// Checks one share against its author's partial key.
bool verify_share(dve::Ciphertext const &ct, dve::PartialKey const &partial, G1 const &pk_beta,
                  ReencShare const &share);

/// ElGamal-style vector under pk_beta: c1 = prod w1^j, c2_i = c_i * prod w2_i^j.
struct ReencCiphertext
{
  G1              c1;
  std::vector<G1> c2;

  Bytes                  serialize() const;
  static ReencCiphertext deserialize(std::span<std::uint8_t const> bytes);

  friend bool operator==(ReencCiphertext const &, ReencCiphertext const &) = default;
};

/// Verifies every share first; throws Error(kPokRejected, client index) on
/// the first bad one and Error(kShapeMismatch) on a count mismatch.
ReencCiphertext reenc(dve::Ciphertext const &ct, std::span<ReencShare const> shares,
                      G1 const &pk_beta, std::span<dve::PartialKey const> partials);

/// Chunk i is the discrete log of c2_i / c1^{sk_beta} to base G_i.
std::vector<std::uint64_t> collector_decrypt(ReencCiphertext const &ct, Scalar const &sk_beta,
                                             unsigned chunk_bits,
                                             std::span<G1 const> message_bases);

/// Publishable evidence that a released result decrypts `ct`: the common
/// mask M = c1^{sk_beta} and a Chaum-Pedersen proof that log_g pk_beta equals
/// log_{c1} M. Anyone can then check c2_i = G_i^{m_i} * M for every chunk.
struct DecryptionProof
{
  G1     mask;
  Scalar challenge;
  Scalar response;

  void                   serialize(ByteWriter &w) const;
  static DecryptionProof deserialize(ByteReader &r);

  friend bool operator==(DecryptionProof const &, DecryptionProof const &) = default;
};

DecryptionProof prove_decryption(ReencCiphertext const &ct, Scalar const &sk_beta, Rng &rng);

bool verify_decryption(ReencCiphertext const &ct, G1 const &pk_beta,
                       std::span<std::uint64_t const> result, std::span<G1 const> message_bases,
                       DecryptionProof const &proof);

}  // namespace vpas::reencrypt
