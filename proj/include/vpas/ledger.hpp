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

// Append-only, SHA-256 hash-chained bulletin board persisted as JSON lines:
// {"index":n,"kind":s,"author":s,"payload":hex,"prev_hash":hex,"entry_hash":hex}

#include "vpas/bytes.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vpas::ledger {

enum class EntryKind
{
  kCrsDigest,
  kPartialKey,
  kP1Share,
  kCollectiveKey,
  kQuery,
  kDataCommitment,
  kDveProof,
  kCiphertextDigest,
  kAggRecord,
  kVreShareProof,
  kReleaseRecord,
};

std::string              to_string(EntryKind kind);
std::optional<EntryKind> kind_from_string(std::string const &name);

struct LedgerEntry
{
  std::uint64_t index = 0;
  EntryKind     kind  = EntryKind::kCrsDigest;
  std::string   author;
  Bytes         payload;
  Digest        prev_hash{};
  Digest        entry_hash{};

  /// SHA-256(u64 index || kind || payload || author || prev_hash), variable
  /// fields length-prefixed.
  Digest compute_hash() const;

  std::string        to_json_line() const;
  static LedgerEntry from_json_line(std::string const &line);  // Error(kParse)
};

struct ChainCheck
{
  bool                       ok = true;
  std::optional<std::size_t> first_bad;
  std::string                reason;
};

/// Recomputes every link. A truncated tail still verifies (prefix property).
ChainCheck verify_chain(std::vector<LedgerEntry> const &entries);

class Ledger
{
public:
  Ledger() = default;
  Ledger(Ledger const &other);
  Ledger &operator=(Ledger const &other);

  std::uint64_t append(EntryKind kind, Bytes payload, std::string author);

  std::vector<LedgerEntry> const &entries() const
  {
    return entries_;
  }
  std::size_t size() const
  {
    return entries_.size();
  }

  /// Entries in index order matching the optional filters.
  std::vector<LedgerEntry> query(std::optional<EntryKind> kind,
                                 std::optional<std::string> author = std::nullopt) const;

  std::string   to_jsonl() const;
  void          save(std::string const &path) const;
  static Ledger from_jsonl(std::string const &text);
  static Ledger load(std::string const &path);  // Error(kIo) if unreadable

  /// Adopts entries as-is without re-chaining (for audit of foreign files).
  static Ledger from_entries(std::vector<LedgerEntry> entries);

private:
  mutable std::mutex       mutex_;
  std::vector<LedgerEntry> entries_;
};

}  // namespace vpas::ledger
