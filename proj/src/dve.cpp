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

#include "vpas/dve.hpp"
#include "vpas/error.hpp"

#include <array>

namespace vpas::dve {
namespace {

using algebra::get_g1;
using algebra::get_g1_vec;
using algebra::get_g2_vec;
using algebra::put;
using algebra::put_vec;

void check_key_shape(std::size_t n, std::vector<G1> const &y, std::vector<G2> const &z)
{
  if (n == 0 || y.size() != n || z.size() != n + 1)
  {
    throw Error(ErrorCode::kDecode, "key component lengths are inconsistent");
  }
}

}  // namespace

// ---------------------------------------------------------------- params

std::vector<G1> PublicParams::message_bases() const
{
  return {vk.ic.begin() + 1, vk.ic.begin() + 1 + static_cast<std::ptrdiff_t>(n_chunks())};
}

Bytes PublicParams::serialize() const
{
  ByteWriter w;
  w.put_string(snark::to_string(relation.kind));
  w.put_u64(relation.n_chunks);
  w.put_u64(relation.value_bits);
  w.put_u64(relation.merkle_depth);
  w.put_u64(chunk_bits);
  vk.serialize(w);
  put(w, neg_gamma_g1);
  return std::move(w).take();
}

PublicParams PublicParams::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader   r(bytes);
  PublicParams p;
  p.relation.kind         = snark::relation_from_string(r.get_string());
  p.relation.n_chunks     = r.get_u64();
  p.relation.value_bits   = static_cast<unsigned>(r.get_u64());
  p.relation.merkle_depth = static_cast<unsigned>(r.get_u64());
  p.chunk_bits            = static_cast<unsigned>(r.get_u64());
  p.vk                    = snark::VerifyingKey::deserialize(r);
  p.neg_gamma_g1          = get_g1(r);
  r.expect_end();
  if (p.relation.n_chunks == 0 ||
      p.vk.num_public() != p.relation.n_chunks + p.relation.aux_count())
  {
    throw Error(ErrorCode::kDecode, "verifying key does not match the relation");
  }
  return p;
}

Digest PublicParams::digest() const
{
  return sha256(serialize());
}

Crs setup(snark::RelationParams const &relation, unsigned chunk_bits, Rng &rng)
{
  if (chunk_bits == 0 || chunk_bits > algebra::BsgsTable::kMaxBits)
  {
    throw Error(ErrorCode::kInvalidArgument, "chunk_bits must be in [1, 40]");
  }
  auto shape = snark::synthesize(relation, nullptr);
  if (shape.num_public() == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "relation has no public inputs");
  }
  snark::SetupExtras extras;
  auto               inner = snark::setup(shape, rng, &extras);

  Crs crs;
  crs.pub.relation     = relation;
  crs.pub.chunk_bits   = chunk_bits;
  crs.pub.vk           = std::move(inner.vk);
  crs.pub.neg_gamma_g1 = extras.neg_gamma_g1;
  crs.pk               = std::move(inner.pk);
  return crs;
}

// ---------------------------------------------------------------- keys

void PartialKey::serialize(ByteWriter &w) const
{
  put(w, x0);
  put_vec(w, x);
  put_vec(w, y);
  put_vec(w, z);
  put(w, p2);
}

Bytes PartialKey::serialize() const
{
  ByteWriter w;
  serialize(w);
  return std::move(w).take();
}

PartialKey PartialKey::deserialize(ByteReader &r)
{
  PartialKey k;
  k.x0 = get_g1(r);
  k.x  = get_g1_vec(r);
  k.y  = get_g1_vec(r);
  k.z  = get_g2_vec(r);
  k.p2 = get_g1(r);
  check_key_shape(k.x.size(), k.y, k.z);
  return k;
}

Bytes CollectiveKey::serialize() const
{
  ByteWriter w;
  put(w, x0);
  put_vec(w, x);
  put_vec(w, y);
  put_vec(w, z);
  put(w, p1);
  put(w, p2);
  return std::move(w).take();
}

CollectiveKey CollectiveKey::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader    r(bytes);
  CollectiveKey k;
  k.x0 = get_g1(r);
  k.x  = get_g1_vec(r);
  k.y  = get_g1_vec(r);
  k.z  = get_g2_vec(r);
  k.p1 = get_g1(r);
  k.p2 = get_g1(r);
  r.expect_end();
  check_key_shape(k.x.size(), k.y, k.z);
  return k;
}

PartialKey partial_from_secret(PublicParams const &pub, SecretKey const &sk)
{
  std::size_t const n = pub.n_chunks();
  if (sk.s.size() != n || sk.t.size() != n + 1)
  {
    throw Error(ErrorCode::kShapeMismatch, "secret key length differs from chunk count");
  }
  G2 const h = G2::generator();

  PartialKey k;
  k.x0 = pub.vk.delta_g1;
  Scalar s_sum;
  for (std::size_t i = 0; i < n; ++i)
  {
    k.x.push_back(k.x0 * sk.s[i]);
    k.y.push_back(pub.message_base(i) * sk.t[i + 1]);
    s_sum += sk.s[i];
  }
  for (std::size_t i = 0; i <= n; ++i)
  {
    k.z.push_back(h * sk.t[i]);
  }
  k.p2 = pub.neg_gamma_g1 * s_sum;
  return k;
}

std::pair<SecretKey, PartialKey> dkg_partial(PublicParams const &pub, Rng &rng)
{
  SecretKey sk;
  for (std::size_t i = 0; i < pub.n_chunks(); ++i)
  {
    sk.s.push_back(Scalar::random_nonzero(rng));
  }
  for (std::size_t i = 0; i <= pub.n_chunks(); ++i)
  {
    sk.t.push_back(Scalar::random_nonzero(rng));
  }
  auto pk = partial_from_secret(pub, sk);
  return {std::move(sk), std::move(pk)};
}

CombinedKey dkg_combine(PublicParams const &pub, std::span<PartialKey const> partials)
{
  if (partials.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "dkg_combine: no partial keys");
  }
  std::size_t const n = pub.n_chunks();
  CombinedKey       out;
  out.parties   = partials.size();
  out.key.x0    = pub.vk.delta_g1;
  out.key.x     = std::vector<G1>(n);
  out.key.y     = std::vector<G1>(n);
  out.key.z     = std::vector<G2>(n + 1);
  out.key.p2    = pub.neg_gamma_g1;
  for (std::size_t j = 0; j < partials.size(); ++j)
  {
    auto const &p = partials[j];
    if (p.x.size() != n || p.y.size() != n || p.z.size() != n + 1)
    {
      throw Error(ErrorCode::kShapeMismatch, "partial key shape mismatch", j);
    }
    if (!(p.x0 == pub.vk.delta_g1))
    {
      throw Error(ErrorCode::kShapeMismatch, "partial key X0 differs from the CRS", j);
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      out.key.x[i] += p.x[i];
      out.key.y[i] += p.y[i];
    }
    for (std::size_t i = 0; i <= n; ++i)
    {
      out.key.z[i] += p.z[i];
    }
    out.key.p2 += p.p2;
  }
  return out;
}

G1 dkg_p1_share(SecretKey const &sk, CombinedKey const &combined)
{
  auto const &k = combined.key;
  if (sk.s.size() != k.x.size() || sk.t.size() != k.x.size() + 1)
  {
    throw Error(ErrorCode::kShapeMismatch, "secret key length differs from combined key");
  }
  std::vector<G1> bases{k.x0};
  bases.insert(bases.end(), k.x.begin(), k.x.end());
  return algebra::msm(bases, sk.t);
}

CollectiveKey dkg_finalize(CombinedKey const &combined, std::span<G1 const> p1_shares)
{
  if (p1_shares.size() != combined.parties)
  {
    throw Error(ErrorCode::kShapeMismatch, "expected one P1 share per client");
  }
  CollectiveKey out;
  out.x0 = combined.key.x0;
  out.x  = combined.key.x;
  out.y  = combined.key.y;
  out.z  = combined.key.z;
  out.p2 = combined.key.p2;
  for (auto const &s : p1_shares)
  {
    out.p1 += s;
  }
  return out;
}

// ---------------------------------------------------------------- ciphertexts

void Ciphertext::serialize(ByteWriter &w) const
{
  put(w, c0);
  put_vec(w, chunks);
  put(w, psi);
}

Bytes Ciphertext::serialize() const
{
  ByteWriter w;
  serialize(w);
  return std::move(w).take();
}

Ciphertext Ciphertext::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader r(bytes);
  Ciphertext ct;
  ct.c0     = get_g1(r);
  ct.chunks = get_g1_vec(r);
  ct.psi    = get_g1(r);
  r.expect_end();
  return ct;
}

Digest Ciphertext::digest() const
{
  return sha256(serialize());
}

EncResult encrypt(Crs const &crs, CollectiveKey const &pk, snark::RelationInput const &input,
                  Rng &rng)
{
  std::size_t const n = crs.pub.n_chunks();
  if (pk.n_chunks() != n || input.chunks.size() != n)
  {
    throw Error(ErrorCode::kShapeMismatch, "chunk count differs from the parameters");
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    if (input.chunks[i] >> crs.pub.chunk_bits != 0)
    {
      throw Error(ErrorCode::kNotInRange, "chunk exceeds chunk width", i);
    }
  }
  auto cs = snark::synthesize(crs.pub.relation, &input);

  EncResult out;
  out.proof = snark::prove(*crs.pk, cs, rng);

  Scalar const        r = Scalar::random_nonzero(rng);
  std::vector<Scalar> m;
  for (auto v : input.chunks)
  {
    m.push_back(Scalar::from_u64(v));
  }
  out.ct.c0 = pk.x0 * r;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.ct.chunks.push_back(pk.x[i] * r + crs.pub.message_base(i) * m[i]);
  }
  out.ct.psi = pk.p1 * r + algebra::msm(pk.y, m);
  out.proof.c += pk.p2 * r;
  return out;
}

char const *to_string(VerifyStatus status)
{
  switch (status)
  {
  case VerifyStatus::kAccept:
    return "accept";
  case VerifyStatus::kShape:
    return "shape mismatch";
  case VerifyStatus::kPsiPairing:
    return "ciphertext pairing check failed";
  case VerifyStatus::kProofPairing:
    return "proof pairing check failed";
  }
  return "unknown";
}

bool psi_identity_holds(CollectiveKey const &pk, Ciphertext const &ct)
{
  if (ct.n_chunks() != pk.n_chunks())
  {
    return false;
  }
  std::vector<G1> lhs{ct.c0};
  lhs.insert(lhs.end(), ct.chunks.begin(), ct.chunks.end());
  lhs.push_back(-ct.psi);
  std::vector<G2> rhs = pk.z;
  rhs.push_back(G2::generator());
  return algebra::multi_pairing(lhs, rhs).is_one();
}

bool partial_key_well_formed(PublicParams const &pub, PartialKey const &partial)
{
  std::size_t const n = pub.n_chunks();
  if (partial.x.size() != n || partial.y.size() != n || partial.z.size() != n + 1 ||
      !(partial.x0 == pub.vk.delta_g1))
  {
    return false;
  }
  // random linear combination of the n checks e(Y_i, H) = e(G_i, Z_{i+1}),
  // weights derived from the key itself
  Bytes const         seed = partial.serialize();
  std::vector<Scalar> rho;
  for (std::size_t i = 0; i < n; ++i)
  {
    ByteWriter w;
    w.put_u64(i);
    w.put_bytes(seed);
    rho.push_back(algebra::hash_to_scalar("vpas-keycheck", w.bytes()));
  }
  std::vector<G1> lhs{-algebra::msm(partial.y, rho)};
  std::vector<G2> rhs{G2::generator()};
  for (std::size_t i = 0; i < n; ++i)
  {
    lhs.push_back(pub.message_base(i) * rho[i]);
    rhs.push_back(partial.z[i + 1]);
  }
  if (!algebra::multi_pairing(lhs, rhs).is_one())
  {
    return false;
  }
  // sum X_i = G^{delta * sum s}, P2 = G^{-gamma * sum s}
  G1 x_sum;
  for (auto const &x : partial.x)
  {
    x_sum += x;
  }
  std::array<G1, 2> a{x_sum, partial.p2};
  std::array<G2, 2> b{pub.vk.gamma_g2, pub.vk.delta_g2};
  return algebra::multi_pairing(a, b).is_one();
}

bool p1_share_consistent(CombinedKey const &combined, PartialKey const &author, G1 const &share)
{
  auto const       &k = combined.key;
  std::size_t const n = k.x.size();
  if (author.z.size() != n + 1)
  {
    return false;
  }
  std::vector<G1> lhs{-share, k.x0};
  std::vector<G2> rhs{G2::generator(), author.z[0]};
  for (std::size_t i = 0; i < n; ++i)
  {
    lhs.push_back(k.x[i]);
    rhs.push_back(author.z[i + 1]);
  }
  return algebra::multi_pairing(lhs, rhs).is_one();
}

VerifyStatus verify_enc_status(PublicParams const &pub, CollectiveKey const &pk,
                               snark::Proof const &proof, Ciphertext const &ct,
                               std::span<Scalar const> aux)
{
  std::size_t const n = pub.n_chunks();
  if (pk.n_chunks() != n || ct.n_chunks() != n || aux.size() != pub.relation.aux_count() ||
      pub.vk.ic.size() != n + aux.size() + 1)
  {
    return VerifyStatus::kShape;
  }
  if (!psi_identity_holds(pk, ct))
  {
    return VerifyStatus::kPsiPairing;
  }
  // statement accumulator: the c_i carry G_i^{m_i} and the randomness that
  // the P2^r shift in C cancels
  G1 acc = pub.vk.ic[0] + ct.c0;
  for (auto const &c : ct.chunks)
  {
    acc += c;
  }
  acc += algebra::msm(std::span<G1 const>(pub.vk.ic).subspan(1 + n), aux);

  std::array<G1, 4> lhs{proof.a, -pub.vk.alpha_g1, -acc, -proof.c};
  std::array<G2, 4> rhs{proof.b, pub.vk.beta_g2, pub.vk.gamma_g2, pub.vk.delta_g2};
  if (!algebra::multi_pairing(lhs, rhs).is_one())
  {
    return VerifyStatus::kProofPairing;
  }
  return VerifyStatus::kAccept;
}

}  // namespace vpas::dve
