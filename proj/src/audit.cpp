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

#include "vpas/error.hpp"
#include "vpas/protocol.hpp"

#include "payloads.hpp"

#include <json.hpp>

#include <algorithm>

namespace vpas::protocol {

using ledger::EntryKind;
using ledger::LedgerEntry;

namespace {

std::optional<std::size_t> parse_client(std::string const &author)
{
  constexpr std::string_view prefix = "client-";
  if (!author.starts_with(prefix) || author.size() == prefix.size())
  {
    return std::nullopt;
  }
  std::size_t j = 0;
  for (char ch : author.substr(prefix.size()))
  {
    if (ch < '0' || ch > '9')
    {
      return std::nullopt;
    }
    j = j * 10 + static_cast<std::size_t>(ch - '0');
  }
  return j;
}

struct PendingCt
{
  dve::Ciphertext ct;
  std::size_t     client = 0;
  std::size_t     entry  = 0;
};

struct QueryCtx
{
  std::uint64_t                               id    = 0;
  std::size_t                                 entry = 0;
  G1                                          pk_beta;
  std::map<std::size_t, Scalar>               roots;
  std::map<std::uint64_t, PendingCt>          pending;
  std::set<Digest>                            seen;
  std::vector<dve::Ciphertext>                posted;
  std::set<std::size_t>                       submitters;
  std::optional<aggregate::AggregationRecord> record;
  std::map<std::size_t, reencrypt::ReencShare> shares;
  bool                                        shares_valid = true;
  bool                                        released     = false;
};

class Auditor
{
public:
  explicit Auditor(std::vector<LedgerEntry> const &entries)
    : entries_(entries)
  {}

  AuditReport run()
  {
    auto chain = ledger::verify_chain(entries_);
    if (chain.ok)
    {
      pass("chain", "all " + std::to_string(entries_.size()) + " links verify");
    }
    else
    {
      fail("chain", chain.reason, chain.first_bad);
    }

    for (auto const &e : entries_)
    {
      try
      {
        visit(e);
      }
      catch (Error const &ex)
      {
        fail("payload", to_string(e.kind) + " entry does not decode: " + ex.what(), e.index);
      }
    }
    close_query();
    check_setup_complete();

    report_.entries_examined = entries_.size();
    std::sort(report_.offending_entries.begin(), report_.offending_entries.end());
    report_.offending_entries.erase(
        std::unique(report_.offending_entries.begin(), report_.offending_entries.end()),
        report_.offending_entries.end());
    if (!report_.offending_entries.empty())
    {
      report_.first_offending = report_.offending_entries.front();
    }
    return std::move(report_);
  }

private:
  void pass(std::string name, std::string detail, std::optional<std::size_t> entry = {})
  {
    report_.checks.push_back({std::move(name), true, std::move(detail), entry});
  }

  void fail(std::string name, std::string detail, std::optional<std::size_t> entry = {})
  {
    report_.accept = false;
    if (entry)
    {
      report_.offending_entries.push_back(*entry);
    }
    report_.checks.push_back({std::move(name), false, std::move(detail), entry});
  }

  void check(bool ok, std::string const &name, std::string const &detail, std::size_t entry)
  {
    if (ok)
    {
      pass(name, detail, entry);
    }
    else
    {
      fail(name, detail, entry);
    }
  }

  // A ciphertext whose proof never arrived. If a later entry was already
  // rejected (typically the unreadable proof itself), that entry is the cause
  // and the ciphertext is not blamed a second time.
  void orphan_ciphertext(std::uint64_t seq, PendingCt const &sub)
  {
    auto const &off   = report_.offending_entries;
    bool const  later = std::any_of(off.begin(), off.end(), [&](std::size_t i) { return i > sub.entry; });
    fail("dve_proof", "submission " + std::to_string(seq) + " has no proof",
         later ? std::nullopt : std::optional<std::size_t>(sub.entry));
  }

  // An entry that cannot be interpreted in the current state.
  bool out_of_order(LedgerEntry const &e, bool ok, char const *why)
  {
    if (!ok)
    {
      fail("ordering", to_string(e.kind) + " entry " + why, e.index);
    }
    return !ok;
  }

  std::optional<std::size_t> client_of(LedgerEntry const &e)
  {
    auto j = parse_client(e.author);
    if (!j || !client_entry_.contains(*j))
    {
      fail("author", "author '" + e.author + "' is not a registered client", e.index);
      return std::nullopt;
    }
    return j;
  }

  bool in_query(LedgerEntry const &e, std::uint64_t id)
  {
    if (out_of_order(e, query_.has_value(), "appears before any query"))
    {
      return false;
    }
    if (id != query_->id)
    {
      fail("ordering", to_string(e.kind) + " entry refers to query " + std::to_string(id) +
                           " while query " + std::to_string(query_->id) + " is open",
           e.index);
      return false;
    }
    return true;
  }

  void visit(LedgerEntry const &e)
  {
    switch (e.kind)
    {
    case EntryKind::kCrsDigest:
      return on_crs(e);
    case EntryKind::kPartialKey:
      return on_partial(e);
    case EntryKind::kP1Share:
      return on_p1(e);
    case EntryKind::kCollectiveKey:
      return on_collective(e);
    case EntryKind::kQuery:
      return on_query(e);
    case EntryKind::kDataCommitment:
      return on_commitment(e);
    case EntryKind::kCiphertextDigest:
      return on_ciphertext(e);
    case EntryKind::kDveProof:
      return on_proof(e);
    case EntryKind::kAggRecord:
      return on_agg(e);
    case EntryKind::kVreShareProof:
      return on_share(e);
    case EntryKind::kReleaseRecord:
      return on_release(e);
    }
  }

  // ------------------------------------------------------------ setup

  void on_crs(LedgerEntry const &e)
  {
    if (out_of_order(e, !params_ && e.index == 0, "must be the unique first entry"))
    {
      return;
    }
    auto crs = payload::Crs::decode(e.payload);
    auto pp  = dve::PublicParams::deserialize(crs.params);
    bool ok  = sha256(crs.params) == crs.digest && pp.digest() == crs.digest;
    check(ok, "crs", ok ? "digest matches the published parameters" : "digest mismatch", e.index);
    if (ok)
    {
      params_ = std::move(pp);
    }
  }

  void on_partial(LedgerEntry const &e)
  {
    if (out_of_order(e, params_.has_value() && p1_.empty() && !collective_,
                     "appears outside the first key round"))
    {
      return;
    }
    auto j = parse_client(e.author);
    if (!j || client_entry_.contains(*j))
    {
      fail("partial_key", "unknown or duplicate author '" + e.author + "'", e.index);
      return;
    }
    ByteReader r(e.payload);
    auto       pk = dve::PartialKey::deserialize(r);
    r.expect_end();
    bool ok = dve::partial_key_well_formed(*params_, pk);
    check(ok, "partial_key",
          e.author + (ok ? " partial key well formed" : " partial key is malformed"), e.index);
    client_entry_[*j] = e.index;
    partials_[*j]     = std::move(pk);
  }

  void on_p1(LedgerEntry const &e)
  {
    if (out_of_order(e, !partials_.empty() && !collective_, "appears outside the second key round"))
    {
      return;
    }
    auto j = client_of(e);
    if (!j)
    {
      return;
    }
    if (p1_.contains(*j))
    {
      fail("p1_share", "duplicate P1 share from " + e.author, e.index);
      return;
    }
    if (!combined_)
    {
      std::vector<dve::PartialKey> all;
      for (auto const &[_, pk] : partials_)
      {
        all.push_back(pk);
      }
      combined_ = dve::dkg_combine(*params_, all);
    }
    ByteReader r(e.payload);
    G1         share = algebra::get_g1(r);
    r.expect_end();
    bool ok = dve::p1_share_consistent(*combined_, partials_.at(*j), share);
    check(ok, "p1_share", e.author + (ok ? " P1 share consistent" : " P1 share inconsistent"),
          e.index);
    p1_[*j] = share;
  }

  void on_collective(LedgerEntry const &e)
  {
    if (out_of_order(e, combined_.has_value() && !collective_ && p1_.size() == partials_.size(),
                     "appears before every P1 share"))
    {
      return;
    }
    auto            posted = dve::CollectiveKey::deserialize(e.payload);
    std::vector<G1> shares;
    for (auto const &[_, s] : p1_)
    {
      shares.push_back(s);
    }
    auto expect = dve::dkg_finalize(*combined_, shares);
    bool ok     = posted == expect;
    check(ok, "collective_key",
          ok ? "equals the combination of the partial keys and P1 shares"
             : "differs from the combination of the partial keys and P1 shares",
          e.index);
    collective_ = std::move(posted);
  }

  void check_setup_complete()
  {
    if (!params_)
    {
      fail("missing_phase", "setup: no CRS entry");
    }
    if (partials_.empty())
    {
      fail("missing_phase", "setup: no partial keys");
    }
    for (auto const &[j, _] : partials_)
    {
      if (j >= partials_.size())
      {
        fail("partial_key", "client ids are not contiguous from 0", client_entry_.at(j));
      }
    }
    if (!collective_)
    {
      fail("missing_phase", "setup: no collective key");
    }
    if (report_.queries == 0)
    {
      fail("missing_phase", "query: none posted");
    }
  }

  // ------------------------------------------------------------ queries

  void on_query(LedgerEntry const &e)
  {
    if (out_of_order(e, collective_.has_value(), "appears before the collective key"))
    {
      return;
    }
    close_query();
    auto q = payload::Query::decode(e.payload);
    if (q.function != "sum" || q.id != next_query_id_)
    {
      fail("query", "unexpected function '" + q.function + "' or query id " +
                        std::to_string(q.id),
           e.index);
    }
    else
    {
      pass("query", "query " + std::to_string(q.id) + " posted", e.index);
    }
    next_query_id_ = q.id + 1;
    ++report_.queries;
    query_.emplace();
    query_->id      = q.id;
    query_->entry   = e.index;
    query_->pk_beta = q.pk_beta;
  }

  void on_commitment(LedgerEntry const &e)
  {
    auto c = payload::Commitment::decode(e.payload);
    if (!in_query(e, c.query) ||
        out_of_order(e, !query_->record, "appears after the aggregation record"))
    {
      return;
    }
    auto j = client_of(e);
    if (!j)
    {
      return;
    }
    if (query_->roots.contains(*j))
    {
      fail("data_commitment", "duplicate commitment from " + e.author, e.index);
      return;
    }
    query_->roots[*j] = c.root;
  }

  void on_ciphertext(LedgerEntry const &e)
  {
    auto p = payload::CiphertextPost::decode(e.payload);
    if (!in_query(e, p.query) ||
        out_of_order(e, !query_->record, "appears after the aggregation record"))
    {
      return;
    }
    auto j = client_of(e);
    if (!j)
    {
      return;
    }
    query_->posted.push_back(p.ct);
    Digest const d = p.ct.digest();
    if (d != p.digest)
    {
      fail("ciphertext", "posted digest does not match the ciphertext", e.index);
      return;
    }
    if (!query_->seen.insert(d).second)
    {
      fail("ciphertext", "replayed ciphertext", e.index);
      return;
    }
    if (query_->pending.contains(p.seq))
    {
      fail("ciphertext", "duplicate submission sequence number", e.index);
      return;
    }
    query_->pending[p.seq] = {std::move(p.ct), *j, e.index};
  }

  void on_proof(LedgerEntry const &e)
  {
    auto p = payload::ProofPost::decode(e.payload);
    if (!in_query(e, p.query))
    {
      return;
    }
    auto it = query_->pending.find(p.seq);
    auto j  = parse_client(e.author);
    if (it == query_->pending.end() || !j || it->second.client != *j)
    {
      fail("dve_proof", "no matching ciphertext from " + e.author, e.index);
      return;
    }
    PendingCt const sub = std::move(it->second);
    query_->pending.erase(it);

    if (params_->relation.kind == snark::RelationKind::kSnp)
    {
      auto root = query_->roots.find(*j);
      if (root == query_->roots.end() || p.aux.size() != 1 || !(p.aux[0] == root->second))
      {
        fail("dve_proof", "statement root differs from the committed root of " + e.author,
             e.index);
        return;
      }
    }
    auto status = dve::verify_enc_status(*params_, *collective_, p.proof, sub.ct, p.aux);
    bool ok     = status == dve::VerifyStatus::kAccept;
    check(ok, "dve_proof",
          "submission " + std::to_string(p.seq) + " from " + e.author + ": " +
              dve::to_string(status),
          e.index);
    if (ok)
    {
      query_->submitters.insert(*j);
    }
  }

  void on_agg(LedgerEntry const &e)
  {
    auto p = payload::AggPost::decode(e.payload);
    if (!in_query(e, p.query) ||
        out_of_order(e, !query_->record, "duplicates the aggregation record"))
    {
      return;
    }
    for (auto const &[seq, sub] : query_->pending)
    {
      orphan_ciphertext(seq, sub);
    }
    query_->pending.clear();
    bool ok = aggregate::verify_agg(p.record, query_->posted);
    check(ok, "aggregation",
          ok ? "result equals the product of the posted ciphertexts"
             : "result is not the product of the posted ciphertexts",
          e.index);
    for (std::size_t j = 0; j < partials_.size(); ++j)
    {
      if (!query_->submitters.contains(j))
      {
        fail("aggregation", "no accepted submission from client-" + std::to_string(j), e.index);
      }
    }
    query_->record = std::move(p.record);
  }

  void on_share(LedgerEntry const &e)
  {
    auto p = payload::SharePost::decode(e.payload);
    if (!in_query(e, p.query) ||
        out_of_order(e, query_->record.has_value() && !query_->released,
                     "appears outside the release phase"))
    {
      return;
    }
    auto j = client_of(e);
    if (!j)
    {
      return;
    }
    if (query_->shares.contains(*j))
    {
      fail("vre_share", "duplicate share from " + e.author, e.index);
      return;
    }
    bool ok = reencrypt::verify_share(query_->record->result, partials_.at(*j), query_->pk_beta,
                                      p.share);
    check(ok, "vre_share", e.author + (ok ? " share proof verifies" : " share proof rejected"),
          e.index);
    query_->shares_valid = query_->shares_valid && ok;
    query_->shares[*j]   = std::move(p.share);
  }

  void on_release(LedgerEntry const &e)
  {
    auto p = payload::Release::decode(e.payload);
    if (!in_query(e, p.query) ||
        out_of_order(e, query_->record.has_value() && !query_->released,
                     "appears before the aggregation record or twice"))
    {
      return;
    }
    query_->released = true;
    auto const &agg  = query_->record->result;
    if (query_->shares.size() != partials_.size() || !query_->shares_valid)
    {
      fail("release", "released without a valid share from every client", e.index);
      return;
    }
    reencrypt::ReencCiphertext expect;
    expect.c2 = agg.chunks;
    for (auto const &[_, s] : query_->shares)
    {
      expect.c1 += s.w1;
      for (std::size_t i = 0; i < expect.c2.size(); ++i)
      {
        expect.c2[i] += s.w2.at(i);
      }
    }
    if (p.aggregate_digest != agg.digest() || !(p.reenc == expect))
    {
      fail("release", "re-encrypted ciphertext does not match the aggregate and shares",
           e.index);
      return;
    }
    bool ok = reencrypt::verify_decryption(p.reenc, query_->pk_beta, p.result,
                                           params_->message_bases(), p.proof);
    check(ok, "release",
          ok ? "released result matches the re-encrypted aggregate"
             : "decryption proof rejected",
          e.index);
  }

  void close_query()
  {
    if (!query_)
    {
      return;
    }
    auto const  q  = std::to_string(query_->id);
    for (auto const &[seq, sub] : query_->pending)
    {
      orphan_ciphertext(seq, sub);
    }
    if (query_->posted.empty())
    {
      fail("missing_phase", "query " + q + ": no submissions");
    }
    if (!query_->record)
    {
      fail("missing_phase", "query " + q + ": no aggregation record");
    }
    else if (query_->shares.size() != partials_.size())
    {
      fail("missing_phase", "query " + q + ": " + std::to_string(query_->shares.size()) + " of " +
                                std::to_string(partials_.size()) + " re-encryption shares");
    }
    if (!query_->released)
    {
      fail("missing_phase", "query " + q + ": no release record");
    }
    query_.reset();
  }

  std::vector<LedgerEntry> const &entries_;
  AuditReport                     report_;

  std::optional<dve::PublicParams>     params_;
  std::map<std::size_t, std::size_t>   client_entry_;
  std::map<std::size_t, dve::PartialKey> partials_;
  std::map<std::size_t, G1>            p1_;
  std::optional<dve::CombinedKey>      combined_;
  std::optional<dve::CollectiveKey>    collective_;
  std::optional<QueryCtx>              query_;
  std::uint64_t                        next_query_id_ = 0;
};

}  // namespace

std::string AuditReport::to_json() const
{
  nlohmann::ordered_json j;
  j["accept"]                = accept;
  j["first_offending_entry"] = first_offending ? nlohmann::ordered_json(*first_offending)
                                               : nlohmann::ordered_json(nullptr);
  j["offending_entries"]     = offending_entries;
  j["entries"]               = entries_examined;
  j["queries"]               = queries;
  auto &arr                  = j["checks"] = nlohmann::ordered_json::array();
  for (auto const &c : checks)
  {
    nlohmann::ordered_json cj;
    cj["name"]   = c.name;
    cj["ok"]     = c.ok;
    cj["detail"] = c.detail;
    cj["entry"]  = c.entry ? nlohmann::ordered_json(*c.entry) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(cj));
  }
  return j.dump(2);
}

AuditReport audit(ledger::Ledger const &ledger)
{
  return Auditor(ledger.entries()).run();
}

AuditReport audit_file(std::string const &path)
{
  ledger::Ledger l;
  try
  {
    l = ledger::Ledger::load(path);
  }
  catch (Error const &e)
  {
    if (e.code() != ErrorCode::kParse)
    {
      throw;
    }
    AuditReport r;
    r.accept = false;
    r.checks.push_back({"parse", false, e.what(), e.index()});
    if (e.index())
    {
      r.offending_entries.push_back(*e.index());
      r.first_offending = e.index();
    }
    return r;
  }
  return audit(l);
}

}  // namespace vpas::protocol
