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

#include "vpas/reencrypt.hpp"
#include "vpas/error.hpp"

namespace vpas::reencrypt {

using algebra::get_g1;
using algebra::get_g1_vec;
using algebra::get_scalar;
using algebra::get_scalar_vec;
using algebra::put;
using algebra::put_vec;

// ---------------------------------------------------------------- PoK

void PokProof::serialize(ByteWriter &w) const
{
  put_vec(w, commit_x);
  put(w, commit_w1);
  put_vec(w, commit_rel);
  put(w, challenge);
  put_vec(w, resp_s);
  put(w, resp_z);
}

Bytes PokProof::serialize() const
{
  ByteWriter w;
  serialize(w);
  return std::move(w).take();
}

PokProof PokProof::deserialize(ByteReader &r)
{
  PokProof p;
  p.commit_x   = get_g1_vec(r);
  p.commit_w1  = get_g1(r);
  p.commit_rel = get_g1_vec(r);
  p.challenge  = get_scalar(r);
  p.resp_s     = get_scalar_vec(r);
  p.resp_z     = get_scalar(r);
  return p;
}

Scalar pok_challenge(PokPublics const &pub, std::span<G1 const> commit_x, G1 const &commit_w1,
                     std::span<G1 const> commit_rel)
{
  ByteWriter w;
  auto       put_span = [&w](std::span<G1 const> v) {
    w.put_u64(v.size());
    for (auto const &p : v)
    {
      put(w, p);
    }
  };
  put(w, pub.x0);
  put_span(pub.x);
  put(w, pub.pk_beta);
  put(w, pub.c1);
  put(w, pub.w1);
  put_span(pub.w2);
  put_span(commit_x);
  put(w, commit_w1);
  put_span(commit_rel);
  return algebra::hash_to_scalar("vpas-pok", w.bytes());
}

PokProof pok_prove(std::span<Scalar const> s, Scalar const &z, PokPublics const &pub, Rng &rng)
{
  std::size_t const n = s.size();
  if (pub.x.size() != n || pub.w2.size() != n)
  {
    throw Error(ErrorCode::kShapeMismatch, "pok_prove: public and secret lengths differ");
  }
  G1 const g = G1::generator();

  std::vector<Scalar> a(n);
  Scalar const        b = Scalar::random(rng);
  PokProof            proof;
  proof.commit_w1 = g * b;
  G1 const beta_b = pub.pk_beta * b;
  for (std::size_t i = 0; i < n; ++i)
  {
    a[i] = Scalar::random(rng);
    proof.commit_x.push_back(pub.x0 * a[i]);
    proof.commit_rel.push_back(pub.c1 * (-a[i]) + beta_b);
  }
  proof.challenge = pok_challenge(pub, proof.commit_x, proof.commit_w1, proof.commit_rel);
  for (std::size_t i = 0; i < n; ++i)
  {
    proof.resp_s.push_back(a[i] + proof.challenge * s[i]);
  }
  proof.resp_z = b + proof.challenge * z;
  return proof;
}

bool pok_verify(PokProof const &proof, PokPublics const &pub)
{
  std::size_t const n = pub.x.size();
  if (pub.w2.size() != n || proof.commit_x.size() != n || proof.commit_rel.size() != n ||
      proof.resp_s.size() != n)
  {
    return false;
  }
  Scalar const c = proof.challenge;
  if (!(c == pok_challenge(pub, proof.commit_x, proof.commit_w1, proof.commit_rel)))
  {
    return false;
  }
  G1 const g = G1::generator();
  if (!(g * proof.resp_z == proof.commit_w1 + pub.w1 * c))
  {
    return false;
  }
  G1 const beta_z = pub.pk_beta * proof.resp_z;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (!(pub.x0 * proof.resp_s[i] == proof.commit_x[i] + pub.x[i] * c))
    {
      return false;
    }
    if (!(pub.c1 * (-proof.resp_s[i]) + beta_z == proof.commit_rel[i] + pub.w2[i] * c))
    {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- shares

Bytes ReencShare::serialize() const
{
  ByteWriter w;
  put(w, w1);
  put_vec(w, w2);
  proof.serialize(w);
  return std::move(w).take();
}

ReencShare ReencShare::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader r(bytes);
  ReencShare s;
  s.w1    = get_g1(r);
  s.w2    = get_g1_vec(r);
  s.proof = PokProof::deserialize(r);
  r.expect_end();
  return s;
}

ReencShare gen_share(dve::Ciphertext const &ct, dve::PartialKey const &partial,
                     dve::SecretKey const &sk, G1 const &pk_beta, Rng &rng)
{
  std::size_t const n = ct.n_chunks();
  if (partial.n_chunks() != n || sk.s.size() != n)
  {
    throw Error(ErrorCode::kShapeMismatch, "gen_share: key and ciphertext shapes differ");
  }
  Scalar const z = Scalar::random_nonzero(rng);
  ReencShare   share;
  share.w1            = G1::generator() * z;
  G1 const beta_z     = pk_beta * z;
  for (std::size_t i = 0; i < n; ++i)
  {
    share.w2.push_back(ct.c0 * (-sk.s[i]) + beta_z);
  }
  PokPublics pub{partial.x0, partial.x, pk_beta, ct.c0, share.w1, share.w2};
  share.proof = pok_prove(sk.s, z, pub, rng);
  return share;
}

bool verify_share(dve::Ciphertext const &ct, dve::PartialKey const &partial, G1 const &pk_beta,
                  ReencShare const &share)
{
  PokPublics pub{partial.x0, partial.x, pk_beta, ct.c0, share.w1, share.w2};
  return share.w2.size() == ct.n_chunks() && pok_verify(share.proof, pub);
}

Bytes ReencCiphertext::serialize() const
{
  ByteWriter w;
  put(w, c1);
  put_vec(w, c2);
  return std::move(w).take();
}

ReencCiphertext ReencCiphertext::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader      r(bytes);
  ReencCiphertext ct;
  ct.c1 = get_g1(r);
  ct.c2 = get_g1_vec(r);
  r.expect_end();
  return ct;
}

ReencCiphertext reenc(dve::Ciphertext const &ct, std::span<ReencShare const> shares,
                      G1 const &pk_beta, std::span<dve::PartialKey const> partials)
{
  if (shares.size() != partials.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "reenc: expected one share per client");
  }
  for (std::size_t j = 0; j < shares.size(); ++j)
  {
    if (!verify_share(ct, partials[j], pk_beta, shares[j]))
    {
      throw Error(ErrorCode::kPokRejected,
                  "re-encryption share of client " + std::to_string(j) + " failed verification", j);
    }
  }
  ReencCiphertext out;
  out.c2 = ct.chunks;
  for (auto const &share : shares)
  {
    out.c1 += share.w1;
    for (std::size_t i = 0; i < out.c2.size(); ++i)
    {
      out.c2[i] += share.w2[i];
    }
  }
  return out;
}

std::vector<std::uint64_t> collector_decrypt(ReencCiphertext const &ct, Scalar const &sk_beta,
                                             unsigned chunk_bits,
                                             std::span<G1 const> message_bases)
{
  if (message_bases.size() != ct.c2.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "collector_decrypt: one base per chunk required");
  }
  G1 const                   mask = ct.c1 * sk_beta;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < ct.c2.size(); ++i)
  {
    auto table = algebra::BsgsTable::cached(message_bases[i], chunk_bits);
    try
    {
      out.push_back(table->dlog(ct.c2[i] - mask));
    }
    catch (Error const &e)
    {
      throw Error(ErrorCode::kNotInRange,
                  "chunk " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  return out;
}

// ---------------------------------------------------------------- release

namespace {

Scalar decryption_challenge(G1 const &pk_beta, ReencCiphertext const &ct, G1 const &mask,
                            G1 const &t_g, G1 const &t_c)
{
  ByteWriter w;
  put(w, pk_beta);
  put(w, ct.c1);
  put(w, mask);
  put(w, t_g);
  put(w, t_c);
  return algebra::hash_to_scalar("vpas-decrypt", w.bytes());
}

}  // namespace

void DecryptionProof::serialize(ByteWriter &w) const
{
  put(w, mask);
  put(w, challenge);
  put(w, response);
}

DecryptionProof DecryptionProof::deserialize(ByteReader &r)
{
  DecryptionProof p;
  p.mask      = get_g1(r);
  p.challenge = get_scalar(r);
  p.response  = get_scalar(r);
  return p;
}

DecryptionProof prove_decryption(ReencCiphertext const &ct, Scalar const &sk_beta, Rng &rng)
{
  G1 const        g = G1::generator();
  Scalar const    u = Scalar::random(rng);
  DecryptionProof proof;
  proof.mask      = ct.c1 * sk_beta;
  proof.challenge = decryption_challenge(g * sk_beta, ct, proof.mask, g * u, ct.c1 * u);
  proof.response  = u + proof.challenge * sk_beta;
  return proof;
}

bool verify_decryption(ReencCiphertext const &ct, G1 const &pk_beta,
                       std::span<std::uint64_t const> result, std::span<G1 const> message_bases,
                       DecryptionProof const &proof)
{
  if (result.size() != ct.c2.size() || message_bases.size() != ct.c2.size())
  {
    return false;
  }
  G1 const g   = G1::generator();
  G1 const t_g = g * proof.response - pk_beta * proof.challenge;
  G1 const t_c = ct.c1 * proof.response - proof.mask * proof.challenge;
  if (!(proof.challenge == decryption_challenge(pk_beta, ct, proof.mask, t_g, t_c)))
  {
    return false;
  }
  for (std::size_t i = 0; i < result.size(); ++i)
  {
    if (!(ct.c2[i] == message_bases[i] * Scalar::from_u64(result[i]) + proof.mask))
    {
      return false;
    }
  }
  return true;
}

}  // namespace vpas::reencrypt
