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

#include "support.hpp"

#include "vpas/aggregate.hpp"
#include "vpas/dve.hpp"
#include "vpas/reencrypt.hpp"

using namespace vpas;
using algebra::G1;
using algebra::G2;
using algebra::Scalar;

namespace {

constexpr unsigned    kChunkBits = 32;
constexpr std::size_t kChunks    = 8;
constexpr unsigned    kValueBits = 6;
constexpr std::size_t kParties   = 3;

// One setup and DKG shared by every case in this file.
struct World
{
  Rng                          rng = Rng::seeded(41);
  dve::Crs                     crs;
  std::vector<dve::SecretKey>  secrets;
  std::vector<dve::PartialKey> partials;
  dve::CombinedKey             combined;
  std::vector<G1>              p1_shares;
  dve::CollectiveKey           pk;

  World()
  {
    crs = dve::setup({snark::RelationKind::kRange, kChunks, kValueBits, 0}, kChunkBits, rng);
    for (std::size_t j = 0; j < kParties; ++j)
    {
      auto [s, p] = dve::dkg_partial(crs.pub, rng);
      secrets.push_back(s);
      partials.push_back(p);
    }
    combined = dve::dkg_combine(crs.pub, partials);
    for (auto const &s : secrets)
    {
      p1_shares.push_back(dve::dkg_p1_share(s, combined));
    }
    pk = dve::dkg_finalize(combined, p1_shares);
  }

  snark::RelationInput input(std::vector<std::uint64_t> chunks) const
  {
    return {std::move(chunks), {}, {}};
  }

  std::vector<std::uint64_t> random_chunks()
  {
    std::vector<std::uint64_t> v(kChunks);
    for (auto &x : v)
    {
      x = rng.uniform(std::uint64_t{1} << kValueBits);
    }
    return v;
  }
};

World &world()
{
  static World w;
  return w;
}

}  // namespace

TEST_SUITE("dve")
{
  TEST_CASE("serialized sizes follow the group-element counts")
  {
    auto &w = world();
    auto  n = kChunks;
    CHECK(w.partials[0].serialize().size() == 48 + 2 * (48 * n + 8) + (96 * (n + 1) + 8) + 48);
    CHECK(w.pk.serialize().size() == w.partials[0].serialize().size() + 48);

    auto enc = dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng);
    CHECK(enc.ct.serialize().size() == (n + 2) * 48 + 8);
    CHECK(enc.proof.serialize().size() == 192);
  }

  TEST_CASE("public parameters, keys and ciphertexts round-trip")
  {
    auto &w = world();
    auto  pub2 = dve::PublicParams::deserialize(w.crs.pub.serialize());
    CHECK(pub2.digest() == w.crs.pub.digest());
    CHECK(pub2.relation == w.crs.pub.relation);

    ByteWriter wr;
    w.partials[1].serialize(wr);
    ByteReader rd(wr.bytes());
    CHECK(dve::PartialKey::deserialize(rd) == w.partials[1]);
    CHECK(dve::CollectiveKey::deserialize(w.pk.serialize()) == w.pk);

    auto enc = dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng);
    CHECK(dve::Ciphertext::deserialize(enc.ct.serialize()) == enc.ct);
    auto bytes = enc.ct.serialize();
    bytes.pop_back();
    CHECK_ERROR(dve::Ciphertext::deserialize(bytes), ErrorCode::kDecode);
  }

  TEST_CASE("partial keys: secret structure and public well-formedness")
  {
    auto &w = world();
    auto &s = w.secrets[0];
    auto &p = w.partials[0];
    CHECK(dve::partial_from_secret(w.crs.pub, s) == p);
    CHECK(p.x0 == w.crs.pub.vk.delta_g1);
    for (std::size_t i = 0; i < kChunks; ++i)
    {
      CHECK(p.x[i] == p.x0 * s.s[i]);
    }
    CHECK(p.z[0] == G2::generator() * s.t[0]);
    for (auto const &partial : w.partials)
    {
      CHECK(dve::partial_key_well_formed(w.crs.pub, partial));
    }

    auto bad_y = p;
    bad_y.y[2] = bad_y.y[2] + G1::generator();
    CHECK_FALSE(dve::partial_key_well_formed(w.crs.pub, bad_y));
    auto bad_p2 = p;
    bad_p2.p2   = bad_p2.p2 + G1::generator();
    CHECK_FALSE(dve::partial_key_well_formed(w.crs.pub, bad_p2));
    auto bad_x0 = p;
    bad_x0.x0   = G1::generator();
    CHECK_FALSE(dve::partial_key_well_formed(w.crs.pub, bad_x0));
  }

  TEST_CASE("P1 shares are checked against the author's partial key")
  {
    auto &w = world();
    for (std::size_t j = 0; j < kParties; ++j)
    {
      CHECK(dve::p1_share_consistent(w.combined, w.partials[j], w.p1_shares[j]));
    }
    CHECK_FALSE(dve::p1_share_consistent(w.combined, w.partials[0], w.p1_shares[1]));
    CHECK_FALSE(dve::p1_share_consistent(w.combined, w.partials[0],
                                         w.p1_shares[0] + G1::generator()));
  }

  TEST_CASE("honest ciphertexts verify")
  {
    auto &w = world();
    for (int i = 0; i < 3; ++i)
    {
      auto enc = dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng);
      CHECK(dve::verify_enc_status(w.crs.pub, w.pk, enc.proof, enc.ct, {}) ==
            dve::VerifyStatus::kAccept);
      CHECK(dve::psi_identity_holds(w.pk, enc.ct));
    }
  }

  TEST_CASE("invalid plaintexts cannot be proven")
  {
    auto &w      = world();
    auto  chunks = w.random_chunks();
    chunks[5]    = std::uint64_t{1} << kValueBits;
    CHECK_ERROR(dve::encrypt(w.crs, w.pk, w.input(chunks), w.rng), ErrorCode::kUnsatisfied);
  }

  TEST_CASE("tampering is caught by the matching check")
  {
    auto &w   = world();
    auto  enc = dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng);
    auto  other = dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng);

    // shifting one chunk by G_i changes the plaintext by one; psi no longer matches
    auto shifted      = enc.ct;
    shifted.chunks[3] = shifted.chunks[3] + w.crs.pub.message_base(3);
    CHECK(dve::verify_enc_status(w.crs.pub, w.pk, enc.proof, shifted, {}) ==
          dve::VerifyStatus::kPsiPairing);

    // a well-formed ciphertext with another ciphertext's proof
    CHECK(dve::verify_enc_status(w.crs.pub, w.pk, other.proof, enc.ct, {}) ==
          dve::VerifyStatus::kProofPairing);

    auto truncated = enc.ct;
    truncated.chunks.pop_back();
    CHECK(dve::verify_enc_status(w.crs.pub, w.pk, enc.proof, truncated, {}) ==
          dve::VerifyStatus::kShape);

    std::vector<Scalar> extra_aux{Scalar::one()};
    CHECK(dve::verify_enc_status(w.crs.pub, w.pk, enc.proof, enc.ct, extra_aux) ==
          dve::VerifyStatus::kShape);
  }
}

TEST_SUITE("aggregate")
{
  TEST_CASE("aggregation multiplies ciphertexts and verifies by recomputation")
  {
    auto                        &w = world();
    std::vector<dve::Ciphertext> cts;
    for (int i = 0; i < 3; ++i)
    {
      cts.push_back(dve::encrypt(w.crs, w.pk, w.input(w.random_chunks()), w.rng).ct);
    }
    auto rec = aggregate::make_record(cts);
    CHECK(rec.input_digests.size() == 3);
    CHECK(rec.result.c0 == cts[0].c0 + cts[1].c0 + cts[2].c0);
    CHECK(aggregate::verify_agg(rec, cts));
    CHECK(dve::psi_identity_holds(w.pk, rec.result));

    auto rt = aggregate::AggregationRecord::deserialize(rec.serialize());
    CHECK(aggregate::verify_agg(rt, cts));

    std::vector<dve::Ciphertext> dropped(cts.begin(), cts.end() - 1);
    CHECK_FALSE(aggregate::verify_agg(rec, dropped));
    std::vector<dve::Ciphertext> reordered{cts[1], cts[0], cts[2]};
    CHECK_FALSE(aggregate::verify_agg(rec, reordered));

    auto substituted   = rec;
    substituted.result = aggregate::agg(dropped);
    CHECK_FALSE(aggregate::verify_agg(substituted, cts));
  }
}

TEST_SUITE("reencrypt")
{
  struct Released
  {
    dve::Ciphertext                    agg;
    std::vector<std::uint64_t>         sums;
    Scalar                             sk_beta;
    G1                                 pk_beta;
    std::vector<reencrypt::ReencShare> shares;
  };

  Released make_released()
  {
    auto                        &w = world();
    std::vector<dve::Ciphertext> cts;
    std::vector<std::uint64_t>   sums(kChunks, 0);
    for (std::size_t j = 0; j < kParties; ++j)
    {
      auto chunks = w.random_chunks();
      for (std::size_t i = 0; i < kChunks; ++i)
      {
        sums[i] += chunks[i];
      }
      cts.push_back(dve::encrypt(w.crs, w.pk, w.input(chunks), w.rng).ct);
    }
    Released r;
    r.agg     = aggregate::agg(cts);
    r.sums    = sums;
    r.sk_beta = Scalar::random_nonzero(w.rng);
    r.pk_beta = G1::generator() * r.sk_beta;
    for (std::size_t j = 0; j < kParties; ++j)
    {
      r.shares.push_back(reencrypt::gen_share(r.agg, w.partials[j], w.secrets[j], r.pk_beta, w.rng));
    }
    return r;
  }

  TEST_CASE("honest shares re-encrypt to the plaintext sums")
  {
    auto &w   = world();
    auto  r   = make_released();
    auto  rct = reencrypt::reenc(r.agg, r.shares, r.pk_beta, w.partials);
    CHECK(reencrypt::collector_decrypt(rct, r.sk_beta, kChunkBits, w.crs.pub.message_bases()) ==
          r.sums);
    CHECK(reencrypt::ReencCiphertext::deserialize(rct.serialize()) == rct);

    auto const &s = r.shares[0];
    CHECK(s.w1_size() == 48);
    CHECK(s.w2_size() == 48 * kChunks + 8);
    CHECK(s.serialize().size() == s.w1_size() + s.w2_size() + s.proof_size());
    auto rt = reencrypt::ReencShare::deserialize(s.serialize());
    CHECK(rt.proof == s.proof);
  }

  TEST_CASE("forged shares are rejected with the author's index")
  {
    auto &w = world();
    auto  r = make_released();
    for (std::size_t j = 0; j < kParties; ++j)
    {
      CHECK(reencrypt::verify_share(r.agg, w.partials[j], r.pk_beta, r.shares[j]));
    }

    auto forged  = r.shares;
    forged[1].w2[4] = forged[1].w2[4] + G1::generator();
    CHECK_FALSE(reencrypt::verify_share(r.agg, w.partials[1], r.pk_beta, forged[1]));
    CHECK(vpas::test::error_of([&] { reencrypt::reenc(r.agg, forged, r.pk_beta, w.partials); }) ==
          ErrorCode::kPokRejected);
    CHECK(vpas::test::error_index_of([&] { reencrypt::reenc(r.agg, forged, r.pk_beta, w.partials); }) ==
          std::optional<std::size_t>(1));

    // client 2 answering with a share made from client 0's secrets
    auto swapped = r.shares;
    swapped[2]   = reencrypt::gen_share(r.agg, w.partials[0], w.secrets[0], r.pk_beta, w.rng);
    CHECK_FALSE(reencrypt::verify_share(r.agg, w.partials[2], r.pk_beta, swapped[2]));

    std::vector<reencrypt::ReencShare> missing(r.shares.begin(), r.shares.end() - 1);
    CHECK_ERROR(reencrypt::reenc(r.agg, missing, r.pk_beta, w.partials), ErrorCode::kShapeMismatch);
  }

  TEST_CASE("proof of knowledge: transcript binding")
  {
    auto &w = world();
    auto  r = make_released();
    auto  s = r.shares[0];
    reencrypt::PokPublics pub{w.partials[0].x0, w.partials[0].x, r.pk_beta, r.agg.c0, s.w1, s.w2};
    CHECK(reencrypt::pok_verify(s.proof, pub));

    auto p2      = s.proof;
    p2.challenge = p2.challenge + Scalar::one();
    CHECK_FALSE(reencrypt::pok_verify(p2, pub));

    auto p3        = s.proof;
    p3.resp_s[0]   = p3.resp_s[0] + Scalar::one();
    CHECK_FALSE(reencrypt::pok_verify(p3, pub));

    auto other_beta = pub;
    other_beta.pk_beta = G1::generator();
    CHECK_FALSE(reencrypt::pok_verify(s.proof, other_beta));
  }

  TEST_CASE("decryption proofs bind the released result")
  {
    auto &w    = world();
    auto  r    = make_released();
    auto  rct  = reencrypt::reenc(r.agg, r.shares, r.pk_beta, w.partials);
    auto  bases = w.crs.pub.message_bases();
    auto  proof = reencrypt::prove_decryption(rct, r.sk_beta, w.rng);
    CHECK(reencrypt::verify_decryption(rct, r.pk_beta, r.sums, bases, proof));

    auto wrong = r.sums;
    wrong[0] += 1;
    CHECK_FALSE(reencrypt::verify_decryption(rct, r.pk_beta, wrong, bases, proof));
    CHECK_FALSE(reencrypt::verify_decryption(rct, G1::generator(), r.sums, bases, proof));

    ByteWriter wr;
    proof.serialize(wr);
    ByteReader rd(wr.bytes());
    CHECK(reencrypt::DecryptionProof::deserialize(rd) == proof);
  }
}
