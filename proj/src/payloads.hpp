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

// Ledger payload layouts shared by the orchestrator and the auditor. All
// query-scoped payloads start with the u64 query id.

#include "vpas/aggregate.hpp"
#include "vpas/reencrypt.hpp"

#include <string>
#include <vector>

namespace vpas::protocol::payload {

using algebra::G1;
using algebra::Scalar;

inline std::string client_id(std::size_t j)
{
  return "client-" + std::to_string(j);
}
inline constexpr char const *kSetupId      = "setup";
inline constexpr char const *kAggregatorId = "aggregator";
inline constexpr char const *kCollectorId  = "collector";

struct Crs
{
  Digest digest{};
  Bytes  params;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_raw(digest);
    w.put_bytes(params);
    return std::move(w).take();
  }
  static Crs decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    Crs        c;
    auto       raw = r.get_raw(32);
    std::copy(raw.begin(), raw.end(), c.digest.begin());
    c.params = r.get_bytes();
    r.expect_end();
    return c;
  }
};

struct Query
{
  std::uint64_t id = 0;
  std::string   function;
  G1            pk_beta;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(id);
    w.put_string(function);
    algebra::put(w, pk_beta);
    return std::move(w).take();
  }
  static Query decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    Query      q;
    q.id       = r.get_u64();
    q.function = r.get_string();
    q.pk_beta  = algebra::get_g1(r);
    r.expect_end();
    return q;
  }
};

struct Commitment
{
  std::uint64_t query = 0;
  Scalar        root;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    algebra::put(w, root);
    return std::move(w).take();
  }
  static Commitment decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    Commitment c;
    c.query = r.get_u64();
    c.root  = algebra::get_scalar(r);
    r.expect_end();
    return c;
  }
};

struct CiphertextPost
{
  std::uint64_t   query = 0;
  std::uint64_t   seq   = 0;
  Digest          digest{};
  dve::Ciphertext ct;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    w.put_u64(seq);
    w.put_raw(digest);
    w.put_bytes(ct.serialize());
    return std::move(w).take();
  }
  static CiphertextPost decode(std::span<std::uint8_t const> b)
  {
    ByteReader     r(b);
    CiphertextPost p;
    p.query  = r.get_u64();
    p.seq    = r.get_u64();
    auto raw = r.get_raw(32);
    std::copy(raw.begin(), raw.end(), p.digest.begin());
    p.ct = dve::Ciphertext::deserialize(r.get_bytes());
    r.expect_end();
    return p;
  }
};

struct ProofPost
{
  std::uint64_t       query = 0;
  std::uint64_t       seq   = 0;
  snark::Proof        proof;
  std::vector<Scalar> aux;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    w.put_u64(seq);
    w.put_raw(proof.serialize());
    algebra::put_vec(w, aux);
    return std::move(w).take();
  }
  static ProofPost decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    ProofPost  p;
    p.query = r.get_u64();
    p.seq   = r.get_u64();
    p.proof = snark::Proof::deserialize(r.get_raw(snark::Proof::kSize));
    p.aux   = algebra::get_scalar_vec(r);
    r.expect_end();
    return p;
  }
};

struct AggPost
{
  std::uint64_t                query = 0;
  aggregate::AggregationRecord record;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    w.put_bytes(record.serialize());
    return std::move(w).take();
  }
  static AggPost decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    AggPost    p;
    p.query  = r.get_u64();
    p.record = aggregate::AggregationRecord::deserialize(r.get_bytes());
    r.expect_end();
    return p;
  }
};

struct SharePost
{
  std::uint64_t          query = 0;
  reencrypt::ReencShare share;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    w.put_bytes(share.serialize());
    return std::move(w).take();
  }
  static SharePost decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    SharePost  p;
    p.query = r.get_u64();
    p.share = reencrypt::ReencShare::deserialize(r.get_bytes());
    r.expect_end();
    return p;
  }
};

struct Release
{
  std::uint64_t                query = 0;
  Digest                       aggregate_digest{};
  reencrypt::ReencCiphertext   reenc;
  std::vector<std::uint64_t>   result;
  reencrypt::DecryptionProof   proof;

  Bytes encode() const
  {
    ByteWriter w;
    w.put_u64(query);
    w.put_raw(aggregate_digest);
    w.put_bytes(reenc.serialize());
    w.put_u64(result.size());
    for (auto v : result)
    {
      w.put_u64(v);
    }
    proof.serialize(w);
    return std::move(w).take();
  }
  static Release decode(std::span<std::uint8_t const> b)
  {
    ByteReader r(b);
    Release    p;
    p.query  = r.get_u64();
    auto raw = r.get_raw(32);
    std::copy(raw.begin(), raw.end(), p.aggregate_digest.begin());
    p.reenc         = reencrypt::ReencCiphertext::deserialize(r.get_bytes());
    std::size_t cnt = r.get_count(8);
    for (std::size_t i = 0; i < cnt; ++i)
    {
      p.result.push_back(r.get_u64());
    }
    p.proof = reencrypt::DecryptionProof::deserialize(r);
    r.expect_end();
    return p;
  }
};

}  // namespace vpas::protocol::payload
