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

// In-process simulation of the full pipeline: Setup, Query, Submit,
// Aggregate, Release, and an offline Audit over the ledger alone.
//
// N clients, one aggregator and one collector are simulated as parties that
// exchange serialized messages. Every message is recorded in a MessageLog
// and every public artifact is appended to the ledger. Each step of a phase
// is exposed separately so tests can inject a misbehaving party between
// them.

#include "vpas/aggregate.hpp"
#include "vpas/ledger.hpp"
#include "vpas/reencrypt.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vpas::protocol {

using algebra::G1;
using algebra::Scalar;

struct ProtocolConfig
{
  std::size_t         n_clients            = 2;
  unsigned            chunk_bits           = 8;
  unsigned            message_bits         = 256;
  unsigned            merkle_depth         = 8;
  snark::RelationKind relation             = snark::RelationKind::kRange;
  std::uint64_t       max_per_client_value = 0;  // 0 selects default_max()
  std::optional<std::uint64_t> seed;             // unset: system entropy

  std::size_t n_chunks() const
  {
    return chunk_bits == 0 ? 0 : message_bits / chunk_bits;
  }

  /// Largest 2^b - 1 with n_clients * (2^b - 1) < 2^chunk_bits.
  static std::uint64_t default_max(std::size_t n_clients, unsigned chunk_bits);

  std::uint64_t effective_max() const;

  /// Range-relation width: the bit length of effective_max().
  unsigned value_bits() const;

  snark::RelationParams relation_params() const;

  /// Error(kInvalidArgument) naming the violated constraint.
  void validate() const;
};

enum class Phase
{
  kDkg,
  kQuery,
  kCommit,
  kDve,
  kVa,
  kVre,
  kRelease,
};

char const *to_string(Phase phase);

struct Message
{
  Phase       phase;
  std::string from;
  std::string to;  // party id, "ledger" or "all"
  std::string what;
  std::size_t bytes = 0;
};

class MessageLog
{
public:
  void record(Phase phase, std::string from, std::string to, std::string what, std::size_t bytes);

  std::size_t bytes(Phase phase) const;
  std::size_t count(Phase phase) const;

  std::vector<Message> const &messages() const
  {
    return messages_;
  }

private:
  std::vector<Message> messages_;
};

/// One client submission: the ciphertext goes to the aggregator, the proof
/// (and its auxiliary statement) to the ledger.
struct Submission
{
  dve::Ciphertext     ct;
  snark::Proof        proof;
  std::vector<Scalar> aux;
};

struct PhaseTiming
{
  std::string name;
  double      seconds = 0;
};

class Simulation
{
public:
  /// Validates the configuration; Error(kInvalidArgument) otherwise.
  explicit Simulation(ProtocolConfig config);

  ProtocolConfig const &config() const
  {
    return config_;
  }

  // -- Setup: CRS, then two DKG broadcast rounds (partial keys, P1 shares).
  void run_setup();

  std::size_t dkg_broadcasts() const
  {
    return dkg_broadcasts_;
  }
  unsigned dkg_rounds() const
  {
    return dkg_rounds_;
  }

  // -- Query: the collector draws a fresh key pair and posts (id, "sum", pk_beta).
  std::uint64_t post_query();

  // -- Submit
  /// Posts a client's data-tree root for the current query (SNP relation).
  void commit_data(std::size_t client, Scalar const &root);

  /// Client-side encryption and proof; Error(kUnsatisfied / kNotInRange)
  /// when the input is invalid.
  Submission make_submission(std::size_t client, snark::RelationInput const &input);

  /// Client posts ciphertext digest and proof, aggregator runs VerifyEnc.
  /// Error(kSubmissionRejected, client) aborts the run.
  void deliver_submission(std::size_t client, Submission const &submission);

  void submit(std::size_t client, snark::RelationInput const &input)
  {
    deliver_submission(client, make_submission(client, input));
  }

  /// One submission per client with the given chunk vectors.
  void run_submit(std::vector<std::vector<std::uint64_t>> const &inputs);

  /// Uniform values in [0, effective_max()] per client and chunk.
  std::vector<std::vector<std::uint64_t>> synthetic_inputs(Rng &rng) const;

  // -- Aggregate
  aggregate::AggregationRecord compute_aggregate() const;

  /// Aggregator posts the record and broadcasts the result; each client
  /// re-verifies. Error(kAggregateRejected) aborts.
  void publish_aggregate(aggregate::AggregationRecord const &record);

  void run_aggregate()
  {
    publish_aggregate(compute_aggregate());
  }

  // -- Release
  reencrypt::ReencShare make_share(std::size_t client);

  /// Posts each share proof, sends shares to the collector, which combines
  /// (Error(kPokRejected, client) on a bad share), decrypts and posts the
  /// release record with its decryption proof.
  std::vector<std::uint64_t> finish_release(std::vector<reencrypt::ReencShare> const &shares);

  std::vector<std::uint64_t> run_release();

  // -- State access
  ledger::Ledger const &ledger() const
  {
    return ledger_;
  }
  MessageLog const &messages() const
  {
    return log_;
  }
  dve::PublicParams const &params() const;
  dve::CollectiveKey const &collective_key() const;
  std::vector<dve::PartialKey> const &partial_keys() const
  {
    return partials_;
  }
  std::vector<PhaseTiming> const &timings() const
  {
    return timings_;
  }
  std::optional<std::uint64_t> current_query() const;
  std::vector<dve::Ciphertext> const &accepted_ciphertexts() const
  {
    return query_.accepted;
  }

  /// Party ids in a fixed order: clients, aggregator, collector.
  std::vector<std::string> party_ids() const;

private:
  enum class Stage
  {
    kFresh,
    kReady,       // setup done, no open query
    kQueryOpen,   // accepting submissions
    kAggregated,
  };

  struct QueryState
  {
    std::uint64_t                               id = 0;
    Scalar                                      sk_beta;
    G1                                          pk_beta;
    std::map<std::size_t, Scalar>               roots;
    std::vector<dve::Ciphertext>                accepted;
    std::set<Digest>                            seen;
    std::uint64_t                               next_seq = 0;
    std::optional<aggregate::AggregationRecord> record;
  };

  void require(Stage stage, char const *op) const;
  void check_client(std::size_t client) const;
  Rng &client_rng(std::size_t client);
  void add_timing(std::string name, std::chrono::steady_clock::time_point start);

  ProtocolConfig config_;
  Rng            rng_;
  Stage          stage_ = Stage::kFresh;

  std::optional<dve::Crs>         crs_;
  std::vector<dve::SecretKey>     secrets_;
  std::vector<dve::PartialKey>    partials_;
  std::optional<dve::CollectiveKey> collective_;
  std::vector<Rng>                client_rngs_;
  Rng                             aggregator_rng_;
  Rng                             collector_rng_;

  std::size_t dkg_broadcasts_ = 0;
  unsigned    dkg_rounds_     = 0;

  std::uint64_t queries_posted_ = 0;
  QueryState    query_;

  ledger::Ledger           ledger_;
  MessageLog               log_;
  std::vector<PhaseTiming> timings_;
};

// ---------------------------------------------------------------- audit

struct AuditCheck
{
  std::string                name;
  bool                       ok = true;
  std::string                detail;
  std::optional<std::size_t> entry;  // offending ledger index, if any
};

struct AuditReport
{
  bool                       accept = true;
  std::vector<AuditCheck>    checks;
  std::vector<std::size_t>   offending_entries;  // sorted, unique
  std::optional<std::size_t> first_offending;
  std::size_t                entries_examined = 0;
  std::size_t                queries          = 0;

  std::string to_json() const;
};

/// Re-runs every public verification from the ledger alone: chain links,
/// CRS digest, key well-formedness and combination, VerifyEnc per submission,
/// the aggregation record, each re-encryption share, the release proof, and
/// the presence of every phase.
AuditReport audit(ledger::Ledger const &ledger);

/// Loads and audits a JSON-lines file. A missing file raises Error(kIo); an
/// unparseable line is reported as a failed check naming that line.
AuditReport audit_file(std::string const &path);

}  // namespace vpas::protocol
