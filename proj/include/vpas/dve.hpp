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

// Distributed verifiable encryption. Group operations are written additively
// in code; "X_i = X0^{s_i}" in the docs is `x[i] = x0 * s[i]` here.
//
// Key layout for n chunks:
//   X0 = G^delta             X_i = X0^{s_i}            (i = 1..n)
//   Y_i = G_i^{t_i}          Z_i = H^{t_i}             (i = 0..n)
//   P2 = G^{-gamma * sum s_i}
// where G_i are the public-input bases of the Groth16 verifying key. Partial
// keys multiply into the combined key; P2 picks up one extra G^{-gamma}, and
// P1 = prod_j (X0^{t_0^j} * prod_i X_i^{t_i^j}) is formed in a second round
// against the combined X.

#include "vpas/circuits.hpp"
#include "vpas/groth16.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace vpas::dve {

using algebra::G1;
using algebra::G2;
using algebra::Scalar;

/// Everything a verifier needs: relation description, chunk width, the
/// verifying key and G^{-gamma}.
struct PublicParams
{
  snark::RelationParams relation;
  unsigned              chunk_bits = 0;
  snark::VerifyingKey   vk;
  G1                    neg_gamma_g1;

  std::size_t n_chunks() const
  {
    return relation.n_chunks;
  }
  G1 const &message_base(std::size_t i) const  // G_{i+1}
  {
    return vk.ic.at(1 + i);
  }
  std::vector<G1> message_bases() const;

  Bytes               serialize() const;
  static PublicParams deserialize(std::span<std::uint8_t const> bytes);
  Digest              digest() const;
};

struct Crs
{
  PublicParams                             pub;
  std::shared_ptr<snark::ProvingKey const> pk;
};

Crs setup(snark::RelationParams const &relation, unsigned chunk_bits, Rng &rng);

struct SecretKey
{
  std::vector<Scalar> s;  // n
  std::vector<Scalar> t;  // n + 1
};

struct PartialKey
{
  G1              x0;
  std::vector<G1> x;
  std::vector<G1> y;
  std::vector<G2> z;
  G1              p2;

  std::size_t n_chunks() const
  {
    return x.size();
  }

  void              serialize(ByteWriter &w) const;
  Bytes             serialize() const;
  static PartialKey deserialize(ByteReader &r);

  friend bool operator==(PartialKey const &, PartialKey const &) = default;
};

/// Product of the round-one partial keys, before P1 exists.
struct CombinedKey
{
  PartialKey  key;
  std::size_t parties = 0;
};

struct CollectiveKey
{
  G1              x0;
  std::vector<G1> x;
  std::vector<G1> y;
  std::vector<G2> z;
  G1              p1;
  G1              p2;

  std::size_t n_chunks() const
  {
    return x.size();
  }

  Bytes                serialize() const;
  static CollectiveKey deserialize(std::span<std::uint8_t const> bytes);

  friend bool operator==(CollectiveKey const &, CollectiveKey const &) = default;
};

struct Ciphertext
{
  G1              c0;
  std::vector<G1> chunks;
  G1              psi;

  std::size_t n_chunks() const
  {
    return chunks.size();
  }

  void              serialize(ByteWriter &w) const;
  Bytes             serialize() const;
  static Ciphertext deserialize(std::span<std::uint8_t const> bytes);
  Digest            digest() const;

  friend bool operator==(Ciphertext const &, Ciphertext const &) = default;
};

std::pair<SecretKey, PartialKey> dkg_partial(PublicParams const &pub, Rng &rng);

/// Partial key derived from known secrets (used by tests and by dkg_partial).
PartialKey partial_from_secret(PublicParams const &pub, SecretKey const &sk);

CombinedKey   dkg_combine(PublicParams const &pub, std::span<PartialKey const> partials);
G1            dkg_p1_share(SecretKey const &sk, CombinedKey const &combined);
CollectiveKey dkg_finalize(CombinedKey const &combined, std::span<G1 const> p1_shares);

/// Pairing checks that a published partial key is internally consistent:
/// X0 is the CRS value, each Y_i and Z_{i+1} share an exponent, and P2
/// matches the X_i. Needs no secrets.
bool partial_key_well_formed(PublicParams const &pub, PartialKey const &partial);

/// e(share, H) = e(X0, Z_0) * prod_i e(X_i, Z_{i+1}) with X from the combined
/// key and Z from the author's partial key.
bool p1_share_consistent(CombinedKey const &combined, PartialKey const &author,
                         G1 const &share);

struct EncResult
{
  snark::Proof proof;
  Ciphertext   ct;
};

/// Proves the relation on (chunks, aux; witness) and encrypts the chunks;
/// the proof's C is shifted by P2^r to tie it to the ciphertext randomness.
EncResult encrypt(Crs const &crs, CollectiveKey const &pk, snark::RelationInput const &input,
                  Rng &rng);

enum class VerifyStatus
{
  kAccept,
  kShape,          // lengths disagree with the parameters
  kPsiPairing,     // prod e(c_i, Z_i) != e(psi, H)
  kProofPairing,   // Groth16 check over the ciphertext-derived statement
};

char const *to_string(VerifyStatus status);

VerifyStatus verify_enc_status(PublicParams const &pub, CollectiveKey const &pk,
                               snark::Proof const &proof, Ciphertext const &ct,
                               std::span<Scalar const> aux);

inline bool verify_enc(PublicParams const &pub, CollectiveKey const &pk, snark::Proof const &proof,
                       Ciphertext const &ct, std::span<Scalar const> aux)
{
  return verify_enc_status(pub, pk, proof, ct, aux) == VerifyStatus::kAccept;
}

/// Only the psi identity; holds for any product of honest ciphertexts.
bool psi_identity_holds(CollectiveKey const &pk, Ciphertext const &ct);

}  // namespace vpas::dve
