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

#include "vpas/ledger.hpp"
#include "vpas/error.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <sstream>

namespace vpas::ledger {
namespace {

constexpr std::array<std::pair<EntryKind, char const *>, 11> kKindNames{{
    {EntryKind::kCrsDigest, "CrsDigest"},
    {EntryKind::kPartialKey, "PartialKey"},
    {EntryKind::kP1Share, "P1Share"},
    {EntryKind::kCollectiveKey, "CollectiveKey"},
    {EntryKind::kQuery, "Query"},
    {EntryKind::kDataCommitment, "DataCommitment"},
    {EntryKind::kDveProof, "DveProof"},
    {EntryKind::kCiphertextDigest, "CiphertextDigest"},
    {EntryKind::kAggRecord, "AggRecord"},
    {EntryKind::kVreShareProof, "VreShareProof"},
    {EntryKind::kReleaseRecord, "ReleaseRecord"},
}};

Digest digest_from_hex(std::string const &hex)
{
  auto   raw = from_hex(hex);
  Digest d{};
  if (raw.size() != d.size())
  {
    throw Error(ErrorCode::kParse, "digest must be 32 bytes");
  }
  std::copy(raw.begin(), raw.end(), d.begin());
  return d;
}

}  // namespace

std::string to_string(EntryKind kind)
{
  for (auto const &[k, name] : kKindNames)
  {
    if (k == kind)
    {
      return name;
    }
  }
  return "Unknown";
}

std::optional<EntryKind> kind_from_string(std::string const &name)
{
  for (auto const &[k, n] : kKindNames)
  {
    if (name == n)
    {
      return k;
    }
  }
  return std::nullopt;
}

Digest LedgerEntry::compute_hash() const
{
  ByteWriter w;
  w.put_u64(index);
  w.put_string(to_string(kind));
  w.put_bytes(payload);
  w.put_string(author);
  w.put_raw(prev_hash);
  return sha256(w.bytes());
}

std::string LedgerEntry::to_json_line() const
{
  nlohmann::ordered_json j;
  j["index"]      = index;
  j["kind"]       = to_string(kind);
  j["author"]     = author;
  j["payload"]    = to_hex(payload);
  j["prev_hash"]  = to_hex(prev_hash);
  j["entry_hash"] = to_hex(entry_hash);
  return j.dump();
}

LedgerEntry LedgerEntry::from_json_line(std::string const &line)
{
  try
  {
    auto        j = nlohmann::json::parse(line);
    LedgerEntry e;
    e.index   = j.at("index").get<std::uint64_t>();
    auto kind = kind_from_string(j.at("kind").get<std::string>());
    if (!kind)
    {
      throw Error(ErrorCode::kParse, "unknown entry kind '" + j.at("kind").get<std::string>() + "'");
    }
    e.kind       = *kind;
    e.author     = j.at("author").get<std::string>();
    e.payload    = from_hex(j.at("payload").get<std::string>());
    e.prev_hash  = digest_from_hex(j.at("prev_hash").get<std::string>());
    e.entry_hash = digest_from_hex(j.at("entry_hash").get<std::string>());
    return e;
  }
  catch (nlohmann::json::exception const &ex)
  {
    throw Error(ErrorCode::kParse, std::string("malformed ledger line: ") + ex.what());
  }
  catch (Error const &ex)
  {
    throw Error(ErrorCode::kParse, ex.what());
  }
}

ChainCheck verify_chain(std::vector<LedgerEntry> const &entries)
{
  Digest prev{};
  for (std::size_t i = 0; i < entries.size(); ++i)
  {
    auto const &e = entries[i];
    if (e.index != i)
    {
      return {false, i, "index out of sequence"};
    }
    if (e.prev_hash != prev)
    {
      return {false, i, "prev_hash does not match the preceding entry"};
    }
    if (e.compute_hash() != e.entry_hash)
    {
      return {false, i, "entry_hash does not match the entry contents"};
    }
    prev = e.entry_hash;
  }
  return {};
}

Ledger::Ledger(Ledger const &other)
{
  std::lock_guard<std::mutex> lock(other.mutex_);
  entries_ = other.entries_;
}

Ledger &Ledger::operator=(Ledger const &other)
{
  if (this != &other)
  {
    std::vector<LedgerEntry> copy;
    {
      std::lock_guard<std::mutex> lock(other.mutex_);
      copy = other.entries_;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

std::uint64_t Ledger::append(EntryKind kind, Bytes payload, std::string author)
{
  std::lock_guard<std::mutex> lock(mutex_);
  LedgerEntry                 e;
  e.index      = entries_.size();
  e.kind       = kind;
  e.author     = std::move(author);
  e.payload    = std::move(payload);
  e.prev_hash  = entries_.empty() ? Digest{} : entries_.back().entry_hash;
  e.entry_hash = e.compute_hash();
  entries_.push_back(std::move(e));
  return entries_.back().index;
}

std::vector<LedgerEntry> Ledger::query(std::optional<EntryKind> kind,
                                       std::optional<std::string> author) const
{
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<LedgerEntry>    out;
  for (auto const &e : entries_)
  {
    if ((!kind || e.kind == *kind) && (!author || e.author == *author))
    {
      out.push_back(e);
    }
  }
  return out;
}

std::string Ledger::to_jsonl() const
{
  std::lock_guard<std::mutex> lock(mutex_);
  std::string                 out;
  for (auto const &e : entries_)
  {
    out += e.to_json_line();
    out += '\n';
  }
  return out;
}

void Ledger::save(std::string const &path) const
{
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
  {
    throw Error(ErrorCode::kIo, "cannot write ledger file '" + path + "'");
  }
  f << to_jsonl();
  if (!f)
  {
    throw Error(ErrorCode::kIo, "failed writing ledger file '" + path + "'");
  }
}

Ledger Ledger::from_jsonl(std::string const &text)
{
  std::vector<LedgerEntry> entries;
  std::istringstream       in(text);
  std::string              line;
  std::size_t              line_no = 0;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    try
    {
      entries.push_back(LedgerEntry::from_json_line(line));
    }
    catch (Error const &e)
    {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no + 1) + ": " + e.what(),
                  line_no);
    }
    ++line_no;
  }
  return from_entries(std::move(entries));
}

Ledger Ledger::load(std::string const &path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f)
  {
    throw Error(ErrorCode::kIo, "cannot open ledger file '" + path + "'");
  }
  std::stringstream buf;
  buf << f.rdbuf();
  return from_jsonl(buf.str());
}

Ledger Ledger::from_entries(std::vector<LedgerEntry> entries)
{
  Ledger l;
  l.entries_ = std::move(entries);
  return l;
}

}  // namespace vpas::ledger
