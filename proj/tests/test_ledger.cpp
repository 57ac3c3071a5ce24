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

#include "vpas/ledger.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

using namespace vpas;
using namespace vpas::ledger;

namespace {

void put_le(Bytes &out, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i)
  {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_prefixed(Bytes &out, std::span<std::uint8_t const> data)
{
  put_le(out, data.size());
  out.insert(out.end(), data.begin(), data.end());
}

// Entry hash assembled byte by byte, without the library's encoder.
Digest oracle_hash(LedgerEntry const &e)
{
  Bytes buf;
  put_le(buf, e.index);
  put_prefixed(buf, as_bytes(to_string(e.kind)));
  put_prefixed(buf, e.payload);
  put_prefixed(buf, as_bytes(e.author));
  buf.insert(buf.end(), e.prev_hash.begin(), e.prev_hash.end());
  return sha256(buf);
}

Ledger sample()
{
  Ledger l;
  l.append(EntryKind::kCrsDigest, {1, 2, 3}, "setup");
  l.append(EntryKind::kPartialKey, {4}, "client-0");
  l.append(EntryKind::kPartialKey, {5, 6}, "client-1");
  l.append(EntryKind::kQuery, {}, "collector");
  l.append(EntryKind::kDveProof, {7, 7, 7, 7}, "client-1");
  return l;
}

std::string temp_path(std::string const &name)
{
  return (std::filesystem::temp_directory_path() / ("vpas-test-" + name)).string();
}

void rechain(std::vector<LedgerEntry> &es)
{
  Digest prev{};
  for (auto &e : es)
  {
    e.prev_hash  = prev;
    e.entry_hash = e.compute_hash();
    prev         = e.entry_hash;
  }
}

}  // namespace

TEST_SUITE("ledger")
{
  TEST_CASE("genesis entry and hash links")
  {
    auto l = sample();
    REQUIRE(l.size() == 5);
    auto const &es = l.entries();
    CHECK(es[0].index == 0);
    CHECK(es[0].prev_hash == Digest{});
    for (std::size_t i = 0; i < es.size(); ++i)
    {
      CHECK(es[i].index == i);
      CHECK(es[i].entry_hash == oracle_hash(es[i]));
      if (i > 0)
      {
        CHECK(es[i].prev_hash == es[i - 1].entry_hash);
      }
    }
    CHECK(verify_chain(es).ok);
  }

  TEST_CASE("kind names round-trip")
  {
    for (int k = 0; k <= static_cast<int>(EntryKind::kReleaseRecord); ++k)
    {
      auto kind = static_cast<EntryKind>(k);
      CHECK(kind_from_string(to_string(kind)) == kind);
    }
    CHECK_FALSE(kind_from_string("Bogus").has_value());
  }

  TEST_CASE("json line layout")
  {
    auto       l = sample();
    auto const &e = l.entries()[1];
    auto       j = nlohmann::json::parse(e.to_json_line());
    CHECK(j["index"] == 1);
    CHECK(j["kind"] == to_string(EntryKind::kPartialKey));
    CHECK(j["author"] == "client-0");
    CHECK(j["payload"] == "04");
    CHECK(j["prev_hash"] == to_hex(l.entries()[0].entry_hash));
    CHECK(j["entry_hash"] == to_hex(e.entry_hash));
    CHECK(e.to_json_line().find('\n') == std::string::npos);

    auto back = LedgerEntry::from_json_line(e.to_json_line());
    CHECK(back.entry_hash == e.entry_hash);
    CHECK(back.payload == e.payload);
    CHECK_ERROR(LedgerEntry::from_json_line("{\"index\":0}"), ErrorCode::kParse);
    CHECK_ERROR(LedgerEntry::from_json_line("not json"), ErrorCode::kParse);
  }

  TEST_CASE("save and reload preserve every byte")
  {
    auto        l    = sample();
    std::string path = temp_path("ledger-roundtrip.jsonl");
    l.save(path);
    auto back = Ledger::load(path);
    CHECK(back.to_jsonl() == l.to_jsonl());
    CHECK(verify_chain(back.entries()).ok);
    std::remove(path.c_str());
    CHECK_ERROR(Ledger::load(temp_path("does-not-exist.jsonl")), ErrorCode::kIo);
  }

  TEST_CASE("a flipped payload byte breaks the entry's own hash")
  {
    auto es = sample().entries();
    es[2].payload[0] ^= 0x01;
    auto c = verify_chain(es);
    CHECK_FALSE(c.ok);
    CHECK(c.first_bad == std::optional<std::size_t>(2));
  }

  TEST_CASE("re-hashing a modified entry breaks the next link")
  {
    auto es = sample().entries();
    es[1].author     = "client-9";
    es[1].entry_hash = es[1].compute_hash();
    auto c           = verify_chain(es);
    CHECK_FALSE(c.ok);
    CHECK(c.first_bad == std::optional<std::size_t>(2));
  }

  TEST_CASE("deletion, reordering and truncation")
  {
    auto es = sample().entries();

    auto deleted = es;
    deleted.erase(deleted.begin() + 2);
    CHECK(verify_chain(deleted).first_bad == std::optional<std::size_t>(2));

    auto swapped = es;
    std::swap(swapped[1], swapped[2]);
    CHECK(verify_chain(swapped).first_bad == std::optional<std::size_t>(1));

    // a prefix remains a valid chain; completeness is the auditor's concern
    std::vector<LedgerEntry> prefix(es.begin(), es.begin() + 3);
    CHECK(verify_chain(prefix).ok);

    auto rewritten = es;
    rewritten[3].payload = {9};
    rechain(rewritten);
    CHECK(verify_chain(rewritten).ok);
    CHECK(rewritten[4].entry_hash != es[4].entry_hash);
  }

  TEST_CASE("malformed files name the failing line")
  {
    auto        text = sample().to_jsonl();
    std::size_t cut  = text.find('\n', text.find('\n') + 1);  // end of line 2
    text.insert(cut + 1, "{broken\n");
    try
    {
      Ledger::from_jsonl(text);
      FAIL("expected a parse error");
    }
    catch (Error const &e)
    {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("query filters by kind and author in index order")
  {
    auto l = sample();
    auto pk = l.query(EntryKind::kPartialKey);
    REQUIRE(pk.size() == 2);
    CHECK(pk[0].index == 1);
    CHECK(pk[1].index == 2);
    CHECK(l.query(std::nullopt, std::string("client-1")).size() == 2);
    CHECK(l.query(EntryKind::kPartialKey, std::string("client-1")).size() == 1);
    CHECK(l.query(EntryKind::kReleaseRecord).empty());
    CHECK(l.query(std::nullopt).size() == 5);
  }

  TEST_CASE("concurrent appends keep a valid chain")
  {
    Ledger                   l;
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t)
    {
      ts.emplace_back([&l, t] {
        for (int i = 0; i < 50; ++i)
        {
          l.append(EntryKind::kDveProof, {static_cast<std::uint8_t>(i)}, "client-" + std::to_string(t));
        }
      });
    }
    for (auto &t : ts)
    {
      t.join();
    }
    CHECK(l.size() == 200);
    CHECK(verify_chain(l.entries()).ok);
  }
}
