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

// Misbehaving-party scenarios. Each one drives an otherwise honest run up to
// the point where one party cheats, records which error the honest parties
// raised, and keeps the transcript so the auditor can be run on it.

#include "vpas/error.hpp"
#include "vpas/protocol.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vpas::test {

struct ScenarioOutcome
{
  std::string                name;
  std::optional<ErrorCode>   code;         // error raised by the honest side
  std::optional<std::size_t> error_index;  // the client it names
  std::string                phase;        // phase that raised it
  ledger::Ledger             ledger;       // transcript at the abort
  std::vector<std::size_t>   culprit_entries;  // entries the cheater posted
  std::string                detail;
};

struct Scenario
{
  std::string                                  name;
  ErrorCode                                    expected_code;
  std::string                                  expected_phase;
  std::optional<std::size_t>                   expected_index;
  std::function<ScenarioOutcome(std::uint64_t)> run;
};

namespace detail {

inline void capture(ScenarioOutcome &out, std::string phase, std::function<void()> const &f)
{
  try
  {
    f();
  }
  catch (Error const &e)
  {
    out.code        = e.code();
    out.error_index = e.index();
    out.phase       = std::move(phase);
    out.detail      = e.what();
  }
}

inline protocol::ProtocolConfig range_config(std::uint64_t seed, std::size_t n = 3)
{
  protocol::ProtocolConfig c;
  c.n_clients  = n;
  c.chunk_bits = 16;
  c.seed       = seed;
  return c;
}

inline protocol::ProtocolConfig snp_config(std::uint64_t seed)
{
  protocol::ProtocolConfig c;
  c.n_clients    = 2;
  c.chunk_bits   = 32;
  c.message_bits = 256;
  c.relation     = snark::RelationKind::kSnp;
  c.merkle_depth = 2;
  c.seed         = seed;
  return c;
}

// Client data trees of two records each; client j holds (j % 3, case) and
// ((j + 1) % 3, control).
struct SnpData
{
  std::vector<snark::MerkleTree> trees;
  std::vector<std::array<std::pair<std::uint64_t, bool>, 2>> records;
};

inline SnpData snp_data(std::size_t clients, unsigned depth)
{
  SnpData d;
  for (std::size_t j = 0; j < clients; ++j)
  {
    d.trees.emplace_back(depth);
    d.records.push_back({{{j % 3, true}, {(j + 1) % 3, false}}});
    for (auto const &[x, is_case] : d.records.back())
    {
      d.trees.back().insert(snark::snp_leaf(x, is_case));
    }
  }
  return d;
}

inline snark::RelationInput snp_input(SnpData const &d, std::size_t client, std::size_t slot,
                                      std::size_t n_chunks)
{
  auto const [x, is_case] = d.records[client][slot];
  snark::RelationInput in;
  in.chunks = snark::snp_chunks(x, is_case, n_chunks);
  in.aux    = {d.trees[client].root()};
  in.snp    = snark::SnpWitness{x, is_case, d.trees[client].prove(slot)};
  return in;
}

inline std::vector<std::size_t> next_two(ledger::Ledger const &l)
{
  return {l.size(), l.size() + 1};
}

}  // namespace detail

// Genotype x = 3. An honest prover refuses (the relation is unsatisfied), so
// the cheater edits an honest ciphertext for x = 2 to move the one-hot bit
// into the count slot; the aggregator rejects it.
inline ScenarioOutcome invalid_snp_value(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "invalid SNP value (x=3)";
  protocol::Simulation sim(snp_config(seed));
  sim.run_setup();
  sim.post_query();
  auto data = snp_data(2, 2);
  for (std::size_t j = 0; j < 2; ++j)
  {
    sim.commit_data(j, data.trees[j].root());
  }
  auto const n = sim.config().n_chunks();

  auto bad      = snp_input(data, 0, 0, n);
  bad.snp->genotype = 3;
  bad.chunks        = {0, 0, 0, 2, 0, 0, 0, 0};
  bad.chunks.resize(n, 0);
  std::optional<ErrorCode> prover_error;
  try
  {
    sim.make_submission(0, bad);
  }
  catch (Error const &e)
  {
    prover_error = e.code();
  }
  if (prover_error != ErrorCode::kUnsatisfied)
  {
    out.detail = "prover accepted x = 3";
    out.ledger = sim.ledger();
    return out;
  }

  // client 1 holds (1, case) then (2, control); forge from the (2, control) record
  auto sub  = sim.make_submission(1, snp_input(data, 1, 1, n));
  auto const &pub = sim.params();
  sub.ct.chunks[6] = sub.ct.chunks[6] - pub.message_base(6);
  sub.ct.chunks[7] = sub.ct.chunks[7] + pub.message_base(7);
  out.culprit_entries = next_two(sim.ledger());
  capture(out, "submit", [&] { sim.deliver_submission(1, sub); });
  out.ledger = sim.ledger();
  return out;
}

// A proof made against a tree other than the one the client committed.
inline ScenarioOutcome wrong_merkle_root(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "wrong Merkle root";
  protocol::Simulation sim(snp_config(seed));
  sim.run_setup();
  sim.post_query();
  auto data = snp_data(2, 2);
  for (std::size_t j = 0; j < 2; ++j)
  {
    sim.commit_data(j, data.trees[j].root());
  }
  auto const n = sim.config().n_chunks();
  sim.submit(0, snp_input(data, 0, 0, n));

  // client 1 proves membership in an uncommitted tree holding a fabricated record
  snark::MerkleTree other(2);
  other.insert(snark::snp_leaf(2, true));
  snark::RelationInput in;
  in.chunks = snark::snp_chunks(2, true, n);
  in.aux    = {other.root()};
  in.snp    = snark::SnpWitness{2, true, other.prove(0)};
  auto sub  = sim.make_submission(1, in);
  out.culprit_entries = next_two(sim.ledger());
  capture(out, "submit", [&] { sim.deliver_submission(1, sub); });
  out.ledger = sim.ledger();
  return out;
}

inline ScenarioOutcome tampered_chunk(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "tampered ciphertext chunk";
  protocol::Simulation sim(range_config(seed));
  sim.run_setup();
  sim.post_query();
  Rng  rng    = Rng::seeded(seed ^ 0x5a5a);
  auto inputs = sim.synthetic_inputs(rng);
  sim.submit(0, {inputs[0], {}, {}});
  auto sub        = sim.make_submission(1, {inputs[1], {}, {}});
  sub.ct.chunks[2] = sub.ct.chunks[2] + sim.params().message_base(2);
  out.culprit_entries = next_two(sim.ledger());
  capture(out, "submit", [&] { sim.deliver_submission(1, sub); });
  out.ledger = sim.ledger();
  return out;
}

inline ScenarioOutcome proof_ciphertext_swap(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "proof/ciphertext swap";
  protocol::Simulation sim(range_config(seed));
  sim.run_setup();
  sim.post_query();
  Rng  rng    = Rng::seeded(seed ^ 0xa5a5);
  auto inputs = sim.synthetic_inputs(rng);
  auto s0     = sim.make_submission(0, {inputs[0], {}, {}});
  auto s1     = sim.make_submission(1, {inputs[1], {}, {}});
  protocol::Submission mixed{s0.ct, s1.proof, {}};
  out.culprit_entries = next_two(sim.ledger());
  capture(out, "submit", [&] { sim.deliver_submission(0, mixed); });
  out.ledger = sim.ledger();
  return out;
}

// Client 1 resubmits client 0's accepted ciphertext and proof.
inline ScenarioOutcome replayed_submission(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "replayed submission";
  protocol::Simulation sim(range_config(seed));
  sim.run_setup();
  sim.post_query();
  Rng  rng    = Rng::seeded(seed ^ 0x3c3c);
  auto inputs = sim.synthetic_inputs(rng);
  auto s0     = sim.make_submission(0, {inputs[0], {}, {}});
  sim.deliver_submission(0, s0);
  out.culprit_entries = next_two(sim.ledger());
  capture(out, "submit", [&] { sim.deliver_submission(1, s0); });
  out.ledger = sim.ledger();
  return out;
}

inline ScenarioOutcome forged_vre_share(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "forged VRE share";
  protocol::Simulation sim(range_config(seed));
  sim.run_setup();
  sim.post_query();
  Rng rng = Rng::seeded(seed ^ 0x7777);
  sim.run_submit(sim.synthetic_inputs(rng));
  sim.run_aggregate();
  std::vector<reencrypt::ReencShare> shares;
  for (std::size_t j = 0; j < sim.config().n_clients; ++j)
  {
    shares.push_back(sim.make_share(j));
  }
  // client 2 shifts one chunk of its share, trying to bias the released sum
  shares[2].w2[1] = shares[2].w2[1] + sim.params().message_base(1);
  out.culprit_entries = {sim.ledger().size() + 2};
  capture(out, "release", [&] { sim.finish_release(shares); });
  out.ledger = sim.ledger();
  return out;
}

// The aggregator drops client 0's ciphertext from the product but still names
// every input.
inline ScenarioOutcome substituted_aggregate(std::uint64_t seed)
{
  using namespace detail;
  ScenarioOutcome      out;
  out.name = "substituted aggregate";
  protocol::Simulation sim(range_config(seed));
  sim.run_setup();
  sim.post_query();
  Rng rng = Rng::seeded(seed ^ 0x9999);
  sim.run_submit(sim.synthetic_inputs(rng));
  auto record = sim.compute_aggregate();
  auto const &acc = sim.accepted_ciphertexts();
  std::vector<dve::Ciphertext> rest(acc.begin() + 1, acc.end());
  record.result = aggregate::agg(rest);
  out.culprit_entries = {sim.ledger().size()};
  capture(out, "aggregate", [&] { sim.publish_aggregate(record); });
  out.ledger = sim.ledger();
  return out;
}

inline std::vector<Scenario> robustness_matrix()
{
  return {
      {"invalid SNP value (x=3)", ErrorCode::kSubmissionRejected, "submit", 1, invalid_snp_value},
      {"wrong Merkle root", ErrorCode::kSubmissionRejected, "submit", 1, wrong_merkle_root},
      {"tampered ciphertext chunk", ErrorCode::kSubmissionRejected, "submit", 1, tampered_chunk},
      {"proof/ciphertext swap", ErrorCode::kSubmissionRejected, "submit", 0, proof_ciphertext_swap},
      {"replayed submission", ErrorCode::kSubmissionRejected, "submit", 1, replayed_submission},
      {"forged VRE share", ErrorCode::kPokRejected, "release", 2, forged_vre_share},
      {"substituted aggregate", ErrorCode::kAggregateRejected, "aggregate", 0, substituted_aggregate},
  };
}

}  // namespace vpas::test
