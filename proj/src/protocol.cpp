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

#include "vpas/protocol.hpp"
#include "vpas/error.hpp"

#include "payloads.hpp"

#include <algorithm>

namespace vpas::protocol {

using ledger::EntryKind;
using payload::client_id;
using payload::kAggregatorId;
using payload::kCollectorId;
using payload::kSetupId;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------- config

std::uint64_t ProtocolConfig::default_max(std::size_t n_clients, unsigned chunk_bits)
{
  if (n_clients == 0 || chunk_bits == 0 || chunk_bits > 63)
  {
    return 0;
  }
  std::uint64_t const limit = std::uint64_t{1} << chunk_bits;
  std::uint64_t       best  = 0;
  for (unsigned b = 1; b <= chunk_bits; ++b)
  {
    std::uint64_t const v = (std::uint64_t{1} << b) - 1;
    if (v > (limit - 1) / n_clients)
    {
      break;
    }
    best = v;
  }
  return best;
}

std::uint64_t ProtocolConfig::effective_max() const
{
  return max_per_client_value != 0 ? max_per_client_value : default_max(n_clients, chunk_bits);
}

unsigned ProtocolConfig::value_bits() const
{
  std::uint64_t m    = effective_max();
  unsigned      bits = 0;
  while (m != 0)
  {
    ++bits;
    m >>= 1;
  }
  return bits;
}

snark::RelationParams ProtocolConfig::relation_params() const
{
  snark::RelationParams p;
  p.kind         = relation;
  p.n_chunks     = n_chunks();
  p.value_bits   = relation == snark::RelationKind::kRange ? value_bits() : 0;
  p.merkle_depth = merkle_depth;
  return p;
}

void ProtocolConfig::validate() const
{
  auto fail = [](std::string const &msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (n_clients == 0)
  {
    fail("n_clients must be at least 1");
  }
  if (chunk_bits != 4 && chunk_bits != 8 && chunk_bits != 16 && chunk_bits != 32)
  {
    fail("chunk_bits must be one of 4, 8, 16, 32");
  }
  if (message_bits == 0 || message_bits % chunk_bits != 0)
  {
    fail("message_bits must be a positive multiple of chunk_bits");
  }
  if (relation == snark::RelationKind::kSnp)
  {
    if (n_chunks() < snark::kSnpChunks)
    {
      fail("the SNP relation needs at least 8 chunks");
    }
    if (merkle_depth == 0 || merkle_depth > 32)
    {
      fail("merkle_depth must be in [1, 32]");
    }
  }
  std::uint64_t const max = effective_max();
  if (max == 0)
  {
    fail("no per-client value fits the overflow budget for " + std::to_string(n_clients) +
         " clients and " + std::to_string(chunk_bits) + "-bit chunks");
  }
  // the range relation proves chunk < 2^value_bits, so that is the bound
  // the aggregate must tolerate
  std::uint64_t const provable =
      relation == snark::RelationKind::kRange ? (std::uint64_t{1} << value_bits()) - 1 : max;
  std::uint64_t const limit = (std::uint64_t{1} << chunk_bits) - 1;
  if (provable > limit / n_clients)
  {
    fail("n_clients * max_per_client_value must stay below 2^chunk_bits");
  }
}

// ---------------------------------------------------------------- messages

char const *to_string(Phase phase)
{
  switch (phase)
  {
  case Phase::kDkg:
    return "dkg";
  case Phase::kQuery:
    return "query";
  case Phase::kCommit:
    return "commit";
  case Phase::kDve:
    return "dve";
  case Phase::kVa:
    return "va";
  case Phase::kVre:
    return "vre";
  case Phase::kRelease:
    return "release";
  }
  return "unknown";
}

void MessageLog::record(Phase phase, std::string from, std::string to, std::string what,
                        std::size_t bytes)
{
  messages_.push_back({phase, std::move(from), std::move(to), std::move(what), bytes});
}

std::size_t MessageLog::bytes(Phase phase) const
{
  std::size_t total = 0;
  for (auto const &m : messages_)
  {
    if (m.phase == phase)
    {
      total += m.bytes;
    }
  }
  return total;
}

std::size_t MessageLog::count(Phase phase) const
{
  return static_cast<std::size_t>(std::count_if(
      messages_.begin(), messages_.end(), [phase](Message const &m) { return m.phase == phase; }));
}

// ---------------------------------------------------------------- simulation

namespace {

Rng root_rng(ProtocolConfig const &c)
{
  return c.seed ? Rng::seeded(*c.seed) : Rng::system();
}

ProtocolConfig validated(ProtocolConfig c)
{
  c.validate();
  return c;
}

}  // namespace

Simulation::Simulation(ProtocolConfig config)
  : config_(validated(std::move(config)))
  , rng_(root_rng(config_))
  , aggregator_rng_(rng_.fork(kAggregatorId))
  , collector_rng_(rng_.fork(kCollectorId))
{
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    client_rngs_.push_back(rng_.fork(client_id(j)));
  }
}

void Simulation::require(Stage stage, char const *op) const
{
  if (stage_ != stage)
  {
    throw Error(ErrorCode::kInvalidArgument, std::string(op) + " called out of phase order");
  }
}

void Simulation::check_client(std::size_t client) const
{
  if (client >= config_.n_clients)
  {
    throw Error(ErrorCode::kInvalidArgument, "no client " + std::to_string(client), client);
  }
}

Rng &Simulation::client_rng(std::size_t client)
{
  check_client(client);
  return client_rngs_[client];
}

void Simulation::add_timing(std::string name, Clock::time_point start)
{
  double const dt = std::chrono::duration<double>(Clock::now() - start).count();
  for (auto &t : timings_)
  {
    if (t.name == name)
    {
      t.seconds += dt;
      return;
    }
  }
  timings_.push_back({std::move(name), dt});
}

dve::PublicParams const &Simulation::params() const
{
  if (!crs_)
  {
    throw Error(ErrorCode::kInvalidArgument, "setup has not run");
  }
  return crs_->pub;
}

dve::CollectiveKey const &Simulation::collective_key() const
{
  if (!collective_)
  {
    throw Error(ErrorCode::kInvalidArgument, "setup has not run");
  }
  return *collective_;
}

std::optional<std::uint64_t> Simulation::current_query() const
{
  if (stage_ == Stage::kQueryOpen || stage_ == Stage::kAggregated)
  {
    return query_.id;
  }
  return std::nullopt;
}

std::vector<std::string> Simulation::party_ids() const
{
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    ids.push_back(client_id(j));
  }
  ids.emplace_back(kAggregatorId);
  ids.emplace_back(kCollectorId);
  return ids;
}

void Simulation::run_setup()
{
  require(Stage::kFresh, "run_setup");
  auto const start = Clock::now();

  Rng setup_rng = rng_.fork(kSetupId);
  crs_          = dve::setup(config_.relation_params(), config_.chunk_bits, setup_rng);
  Bytes params  = crs_->pub.serialize();
  ledger_.append(EntryKind::kCrsDigest, payload::Crs{sha256(params), params}.encode(), kSetupId);

  // round 1: every client broadcasts its partial key
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    auto [sk, pk] = dve::dkg_partial(crs_->pub, client_rngs_[j]);
    Bytes bytes   = pk.serialize();
    log_.record(Phase::kDkg, client_id(j), "all", "partial key", bytes.size());
    ledger_.append(EntryKind::kPartialKey, std::move(bytes), client_id(j));
    ++dkg_broadcasts_;
    secrets_.push_back(std::move(sk));
    partials_.push_back(std::move(pk));
  }
  ++dkg_rounds_;

  // round 2: P1 shares against the combined key
  auto const      combined = dve::dkg_combine(crs_->pub, partials_);
  std::vector<G1> shares;
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    G1         share = dve::dkg_p1_share(secrets_[j], combined);
    ByteWriter w;
    algebra::put(w, share);
    Bytes bytes = std::move(w).take();
    log_.record(Phase::kDkg, client_id(j), "all", "P1 share", bytes.size());
    ledger_.append(EntryKind::kP1Share, std::move(bytes), client_id(j));
    ++dkg_broadcasts_;
    shares.push_back(share);
  }
  ++dkg_rounds_;

  collective_ = dve::dkg_finalize(combined, shares);
  ledger_.append(EntryKind::kCollectiveKey, collective_->serialize(), kSetupId);

  stage_ = Stage::kReady;
  add_timing("setup", start);
}

std::uint64_t Simulation::post_query()
{
  require(Stage::kReady, "post_query");
  auto const start = Clock::now();

  query_         = QueryState{};
  query_.id      = queries_posted_++;
  query_.sk_beta = Scalar::random_nonzero(collector_rng_);
  query_.pk_beta = G1::generator() * query_.sk_beta;

  Bytes bytes = payload::Query{query_.id, "sum", query_.pk_beta}.encode();
  log_.record(Phase::kQuery, kCollectorId, "ledger", "query", bytes.size());
  ledger_.append(EntryKind::kQuery, std::move(bytes), kCollectorId);

  stage_ = Stage::kQueryOpen;
  add_timing("query", start);
  return query_.id;
}

void Simulation::commit_data(std::size_t client, Scalar const &root)
{
  require(Stage::kQueryOpen, "commit_data");
  check_client(client);
  if (query_.roots.contains(client))
  {
    throw Error(ErrorCode::kInvalidArgument, client_id(client) + " already committed", client);
  }
  query_.roots[client] = root;
  Bytes bytes          = payload::Commitment{query_.id, root}.encode();
  log_.record(Phase::kCommit, client_id(client), "ledger", "data commitment", bytes.size());
  ledger_.append(EntryKind::kDataCommitment, std::move(bytes), client_id(client));
}

Submission Simulation::make_submission(std::size_t client, snark::RelationInput const &input)
{
  require(Stage::kQueryOpen, "make_submission");
  auto const start = Clock::now();
  auto       enc   = dve::encrypt(*crs_, *collective_, input, client_rng(client));
  add_timing("submit", start);
  return {std::move(enc.ct), enc.proof, input.aux};
}

void Simulation::deliver_submission(std::size_t client, Submission const &s)
{
  require(Stage::kQueryOpen, "deliver_submission");
  check_client(client);
  auto const start = Clock::now();

  std::uint64_t const seq    = query_.next_seq++;
  Digest const        digest = s.ct.digest();
  Bytes const         ct     = s.ct.serialize();
  log_.record(Phase::kDve, client_id(client), kAggregatorId, "ciphertext", ct.size());
  log_.record(Phase::kDve, client_id(client), "ledger", "dve proof", snark::Proof::kSize);
  ledger_.append(EntryKind::kCiphertextDigest,
                 payload::CiphertextPost{query_.id, seq, digest, s.ct}.encode(), client_id(client));
  ledger_.append(EntryKind::kDveProof, payload::ProofPost{query_.id, seq, s.proof, s.aux}.encode(),
                 client_id(client));

  auto reject = [&](std::string const &why) {
    add_timing("submit", start);
    throw Error(ErrorCode::kSubmissionRejected,
                "submission " + std::to_string(seq) + " from " + client_id(client) +
                    " rejected: " + why,
                client);
  };
  if (query_.seen.contains(digest))
  {
    reject("replayed ciphertext");
  }
  if (config_.relation == snark::RelationKind::kSnp)
  {
    auto it = query_.roots.find(client);
    if (it == query_.roots.end())
    {
      reject("no data commitment for this query");
    }
    if (s.aux.size() != 1 || !(s.aux[0] == it->second))
    {
      reject("statement root differs from the committed root");
    }
  }
  auto const status = dve::verify_enc_status(crs_->pub, *collective_, s.proof, s.ct, s.aux);
  if (status != dve::VerifyStatus::kAccept)
  {
    reject(dve::to_string(status));
  }
  query_.seen.insert(digest);
  query_.accepted.push_back(s.ct);
  add_timing("submit", start);
}

void Simulation::run_submit(std::vector<std::vector<std::uint64_t>> const &inputs)
{
  if (inputs.size() != config_.n_clients)
  {
    throw Error(ErrorCode::kShapeMismatch, "run_submit: one input per client required");
  }
  for (std::size_t j = 0; j < inputs.size(); ++j)
  {
    snark::RelationInput in;
    in.chunks = inputs[j];
    submit(j, in);
  }
}

std::vector<std::vector<std::uint64_t>> Simulation::synthetic_inputs(Rng &rng) const
{
  std::uint64_t const                     max = config_.effective_max();
  std::vector<std::vector<std::uint64_t>> out(config_.n_clients);
  for (auto &v : out)
  {
    for (std::size_t i = 0; i < config_.n_chunks(); ++i)
    {
      v.push_back(rng.uniform(max + 1));
    }
  }
  return out;
}

aggregate::AggregationRecord Simulation::compute_aggregate() const
{
  require(Stage::kQueryOpen, "compute_aggregate");
  if (query_.accepted.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "no accepted submissions to aggregate");
  }
  return aggregate::make_record(query_.accepted);
}

void Simulation::publish_aggregate(aggregate::AggregationRecord const &record)
{
  require(Stage::kQueryOpen, "publish_aggregate");
  auto const start = Clock::now();
  ledger_.append(EntryKind::kAggRecord, payload::AggPost{query_.id, record}.encode(),
                 kAggregatorId);
  log_.record(Phase::kVa, kAggregatorId, "all", "aggregate", record.result.serialize().size());

  // every client re-derives the product from the ciphertexts on the ledger
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    if (!aggregate::verify_agg(record, query_.accepted))
    {
      add_timing("aggregate", start);
      throw Error(ErrorCode::kAggregateRejected,
                  client_id(j) + " rejected the aggregation result", j);
    }
  }
  query_.record = record;
  stage_        = Stage::kAggregated;
  add_timing("aggregate", start);
}

reencrypt::ReencShare Simulation::make_share(std::size_t client)
{
  require(Stage::kAggregated, "make_share");
  check_client(client);
  auto const start = Clock::now();
  auto       share = reencrypt::gen_share(query_.record->result, partials_[client],
                                          secrets_[client], query_.pk_beta, client_rng(client));
  add_timing("release", start);
  return share;
}

std::vector<std::uint64_t>
Simulation::finish_release(std::vector<reencrypt::ReencShare> const &shares)
{
  require(Stage::kAggregated, "finish_release");
  if (shares.size() != config_.n_clients)
  {
    throw Error(ErrorCode::kShapeMismatch, "finish_release: one share per client required");
  }
  auto const start = Clock::now();
  for (std::size_t j = 0; j < shares.size(); ++j)
  {
    auto const &s = shares[j];
    log_.record(Phase::kVre, client_id(j), kCollectorId, "re-encryption share",
                s.w1_size() + s.w2_size());
    log_.record(Phase::kVre, client_id(j), "ledger", "vre proof", s.proof_size());
    ledger_.append(EntryKind::kVreShareProof, payload::SharePost{query_.id, s}.encode(),
                   client_id(j));
  }

  auto const &agg = query_.record->result;
  reencrypt::ReencCiphertext rct;
  try
  {
    rct = reencrypt::reenc(agg, shares, query_.pk_beta, partials_);
  }
  catch (Error const &)
  {
    add_timing("release", start);
    throw;
  }
  auto const bases  = crs_->pub.message_bases();
  auto       result = reencrypt::collector_decrypt(rct, query_.sk_beta, config_.chunk_bits, bases);

  payload::Release rel;
  rel.query            = query_.id;
  rel.aggregate_digest = agg.digest();
  rel.reenc            = rct;
  rel.result           = result;
  rel.proof            = reencrypt::prove_decryption(rct, query_.sk_beta, collector_rng_);
  Bytes bytes          = rel.encode();
  log_.record(Phase::kRelease, kCollectorId, "ledger", "release record", bytes.size());
  ledger_.append(EntryKind::kReleaseRecord, std::move(bytes), kCollectorId);

  stage_ = Stage::kReady;
  add_timing("release", start);
  return result;
}

std::vector<std::uint64_t> Simulation::run_release()
{
  std::vector<reencrypt::ReencShare> shares;
  for (std::size_t j = 0; j < config_.n_clients; ++j)
  {
    shares.push_back(make_share(j));
  }
  return finish_release(shares);
}

}  // namespace vpas::protocol
