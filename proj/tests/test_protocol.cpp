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

#include "scenarios.hpp"
#include "support.hpp"

#include "vpas/protocol.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace vpas;
using namespace vpas::protocol;
using vpas::test::chunkwise_sums;
using vpas::test::run_honest;

namespace {

// Brute-force search for the largest 2^b - 1 with n (2^b - 1) < 2^chunk_bits.
std::uint64_t brute_default_max(std::size_t n, unsigned chunk_bits)
{
  std::uint64_t best = 0;
  for (unsigned b = 1; b <= 32; ++b)
  {
    std::uint64_t v = (std::uint64_t{1} << b) - 1;
    if (static_cast<unsigned __int128>(n) * v < (static_cast<unsigned __int128>(1) << chunk_bits))
    {
      best = v;
    }
  }
  return best;
}

ProtocolConfig config(std::size_t n, unsigned chunk_bits, std::uint64_t seed)
{
  ProtocolConfig c;
  c.n_clients  = n;
  c.chunk_bits = chunk_bits;
  c.seed       = seed;
  return c;
}

bool contains(std::vector<std::size_t> const &v, std::size_t x)
{
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

TEST_SUITE("protocol")
{
  TEST_CASE("configuration bounds")
  {
    for (std::size_t n : {1u, 2u, 3u, 8u, 100u})
    {
      for (unsigned cb : {4u, 8u, 16u, 32u})
      {
        CHECK(ProtocolConfig::default_max(n, cb) == brute_default_max(n, cb));
      }
    }
    auto c = config(2, 8, 1);
    CHECK(c.n_chunks() == 32);
    CHECK(c.effective_max() == 127);
    CHECK(c.value_bits() == 7);
    CHECK_NOTHROW(c.validate());

    auto bad_width     = c;
    bad_width.chunk_bits = 12;
    CHECK_ERROR(bad_width.validate(), ErrorCode::kInvalidArgument);
    auto ragged         = c;
    ragged.message_bits = 250;
    CHECK_ERROR(ragged.validate(), ErrorCode::kInvalidArgument);
    auto nobody      = c;
    nobody.n_clients = 0;
    CHECK_ERROR(nobody.validate(), ErrorCode::kInvalidArgument);
    auto overflow                 = c;
    overflow.max_per_client_value = 128;  // 2 * 255 does not fit in 8 bits
    CHECK_ERROR(overflow.validate(), ErrorCode::kInvalidArgument);
    auto snp     = c;
    snp.relation = snark::RelationKind::kSnp;  // needs 8 chunks of 32 bits at most 256
    snp.chunk_bits = 32;
    snp.message_bits = 128;
    CHECK_ERROR(snp.validate(), ErrorCode::kInvalidArgument);
    CHECK_ERROR(Simulation(nobody), ErrorCode::kInvalidArgument);
  }

  TEST_CASE("honest runs release the chunkwise sums")
  {
    for (auto [n, cb] : {std::pair<std::size_t, unsigned>{1, 8}, {3, 16}, {4, 32}})
    {
      Simulation sim(config(n, cb, 100 + n));
      auto       r = run_honest(sim, 7);
      CHECK(r.released == chunkwise_sums(r.inputs));
      CHECK(audit(sim.ledger()).accept);
    }
  }

  TEST_CASE("trivial relation and explicit bounds")
  {
    auto c                 = config(2, 8, 5);
    c.relation             = snark::RelationKind::kTrivial;
    c.max_per_client_value = 100;
    Simulation sim(c);
    auto       r = run_honest(sim, 9);
    for (auto const &row : r.inputs)
    {
      for (auto v : row)
      {
        CHECK(v <= 100);
      }
    }
    CHECK(r.released == chunkwise_sums(r.inputs));
    CHECK(audit(sim.ledger()).accept);
  }

  TEST_CASE("communication bytes follow the object sizes")
  {
    std::size_t const n = 3;
    Simulation        sim(config(n, 16, 11));
    run_honest(sim, 1);
    auto const &m = sim.messages();

    std::size_t const pk_i  = sim.partial_keys()[0].serialize().size();
    std::size_t const ct    = sim.accepted_ciphertexts()[0].serialize().size();
    std::size_t const share = [&] {
      // one fresh share has the same shape as the posted ones
      auto es = sim.ledger().query(ledger::EntryKind::kVreShareProof);
      return es.size();
    }();
    CHECK(share == n);
    CHECK(m.bytes(Phase::kDkg) == n * pk_i + n * 48);
    CHECK(m.bytes(Phase::kDve) == n * ct + n * 192);
    CHECK(m.bytes(Phase::kVa) == ct);
    std::size_t const chunks = sim.config().n_chunks();
    std::size_t const w      = 48 + (48 * chunks + 8);
    // n commitments in each of two vectors, w1 commitment, challenge, n + 1 responses
    std::size_t const pok = (48 * chunks + 8) * 2 + 48 + 32 + (32 * chunks + 8) + 32;
    CHECK(m.bytes(Phase::kVre) == n * (w + pok));
    CHECK(sim.dkg_broadcasts() == 2 * n);
    CHECK(sim.dkg_rounds() == 2);
    CHECK(m.count(Phase::kDkg) == 2 * n);
  }

  TEST_CASE("same seed, byte-identical ledgers")
  {
    Simulation a(config(2, 8, 77)), b(config(2, 8, 77)), c(config(2, 8, 78));
    run_honest(a, 3);
    run_honest(b, 3);
    run_honest(c, 3);
    CHECK(a.ledger().to_jsonl() == b.ledger().to_jsonl());
    CHECK(a.ledger().to_jsonl() != c.ledger().to_jsonl());
  }

  TEST_CASE("phase order is enforced")
  {
    Simulation sim(config(2, 8, 1));
    CHECK_ERROR(sim.post_query(), ErrorCode::kInvalidArgument);
    sim.run_setup();
    CHECK_ERROR(sim.run_aggregate(), ErrorCode::kInvalidArgument);
    CHECK_ERROR(sim.run_setup(), ErrorCode::kInvalidArgument);
    sim.post_query();
    CHECK_ERROR(sim.make_share(0), ErrorCode::kInvalidArgument);
    CHECK_ERROR(sim.submit(5, {}), ErrorCode::kInvalidArgument);
    CHECK_ERROR(sim.run_submit({{1}}), ErrorCode::kShapeMismatch);
  }

  TEST_CASE("out-of-range inputs are refused by the client")
  {
    Simulation sim(config(2, 8, 1));
    sim.run_setup();
    sim.post_query();
    std::vector<std::uint64_t> row(sim.config().n_chunks(), 1);
    row[4] = 200;  // above the 127 bound
    CHECK(vpas::test::error_of([&] { sim.submit(0, {row, {}, {}}); }).has_value());
    CHECK(sim.accepted_ciphertexts().empty());
  }

  TEST_CASE("several queries after one setup")
  {
    Simulation sim(config(2, 16, 3));
    auto       first = run_honest(sim, 1);
    CHECK(first.released == chunkwise_sums(first.inputs));
    sim.post_query();
    Rng  rng    = Rng::seeded(2);
    auto inputs = sim.synthetic_inputs(rng);
    sim.run_submit(inputs);
    sim.run_aggregate();
    CHECK(sim.run_release() == chunkwise_sums(inputs));
    auto rep = audit(sim.ledger());
    CHECK(rep.accept);
    CHECK(rep.queries == 2);
  }

  TEST_CASE("SNP relation end to end")
  {
    auto s = vpas::test::detail::snp_config(9);
    Simulation sim(s);
    sim.run_setup();
    sim.post_query();
    auto data = vpas::test::detail::snp_data(2, 2);
    std::vector<std::uint64_t> expect(sim.config().n_chunks(), 0);
    for (std::size_t j = 0; j < 2; ++j)
    {
      sim.commit_data(j, data.trees[j].root());
    }
    for (std::size_t j = 0; j < 2; ++j)
    {
      for (std::size_t slot = 0; slot < 2; ++slot)
      {
        auto in = vpas::test::detail::snp_input(data, j, slot, sim.config().n_chunks());
        for (std::size_t i = 0; i < in.chunks.size(); ++i)
        {
          expect[i] += in.chunks[i];
        }
        sim.submit(j, in);
      }
    }
    sim.run_aggregate();
    CHECK(sim.run_release() == expect);
    CHECK(audit(sim.ledger()).accept);
  }
}

TEST_SUITE("robustness")
{
  TEST_CASE("every cheating party is caught at its phase with its error class")
  {
    for (auto const &sc : vpas::test::robustness_matrix())
    {
      CAPTURE(sc.name);
      auto out = sc.run(2024);
      CHECK(out.code == sc.expected_code);
      CHECK(out.phase == sc.expected_phase);
      CHECK(out.error_index == sc.expected_index);

      auto rep = audit(out.ledger);
      CHECK_FALSE(rep.accept);
      REQUIRE(rep.first_offending.has_value());
      CHECK(contains(out.culprit_entries, *rep.first_offending));
    }
  }
}

TEST_SUITE("audit")
{
  // One honest transcript shared by the mutation cases.
  ledger::Ledger const &honest()
  {
    static ledger::Ledger const l = [] {
      Simulation sim(config(2, 16, 31));
      run_honest(sim, 4);
      return sim.ledger();
    }();
    return l;
  }

  void rechain_from(std::vector<ledger::LedgerEntry> &es, std::size_t from)
  {
    for (std::size_t i = from; i < es.size(); ++i)
    {
      es[i].index      = i;
      es[i].prev_hash  = i == 0 ? Digest{} : es[i - 1].entry_hash;
      es[i].entry_hash = es[i].compute_hash();
    }
  }

  TEST_CASE("an honest transcript passes every check")
  {
    auto rep = audit(honest());
    CHECK(rep.accept);
    CHECK(rep.entries_examined == honest().size());
    CHECK(rep.offending_entries.empty());
    CHECK_FALSE(rep.first_offending.has_value());
    for (auto const &c : rep.checks)
    {
      CHECK(c.ok);
    }
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["accept"] == true);
    CHECK(j["first_offending_entry"].is_null());
  }

  TEST_CASE("a byte flip without re-chaining is a chain failure at that entry")
  {
    auto es = honest().entries();
    es[5].payload[10] ^= 0x04;
    auto rep = audit(ledger::Ledger::from_entries(es));
    CHECK_FALSE(rep.accept);
    CHECK(rep.first_offending == std::optional<std::size_t>(5));
  }

  TEST_CASE("payload mutations with a consistent chain are named by entry")
  {
    auto const base = honest().entries();
    Rng        pick = Rng::seeded(99);
    for (std::size_t k = 0; k < base.size(); ++k)
    {
      for (int t = 0; t < 4; ++t)
      {
        auto  es = base;
        auto &p  = es[k].payload;
        REQUIRE_FALSE(p.empty());
        std::size_t pos = pick.uniform(p.size());
        p[pos] ^= static_cast<std::uint8_t>(1u << pick.uniform(8));
        rechain_from(es, k);
        auto rep = audit(ledger::Ledger::from_entries(es));
        CAPTURE(k);
        CAPTURE(pos);
        CHECK_FALSE(rep.accept);
        CHECK(rep.first_offending == std::optional<std::size_t>(k));
      }
    }
  }

  TEST_CASE("author substitution is caught")
  {
    auto es = honest().entries();
    auto idx = honest().query(ledger::EntryKind::kDveProof)[0].index;
    es[idx].author = "client-1";
    rechain_from(es, idx);
    auto rep = audit(ledger::Ledger::from_entries(es));
    CHECK_FALSE(rep.accept);
    CHECK(rep.first_offending == std::optional<std::size_t>(idx));
  }

  TEST_CASE("removed, duplicated and reordered entries")
  {
    auto const base = honest().entries();
    auto       agg  = honest().query(ledger::EntryKind::kAggRecord)[0].index;

    auto removed = base;
    removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(agg));
    rechain_from(removed, 0);
    CHECK_FALSE(audit(ledger::Ledger::from_entries(removed)).accept);

    auto dup = base;
    dup.insert(dup.begin() + static_cast<std::ptrdiff_t>(agg), base[agg - 1]);
    rechain_from(dup, 0);
    auto rep = audit(ledger::Ledger::from_entries(dup));
    CHECK_FALSE(rep.accept);
    CHECK(rep.first_offending == std::optional<std::size_t>(agg));

    auto swapped = base;
    std::swap(swapped[agg], swapped[agg + 1]);
    rechain_from(swapped, 0);
    rep = audit(ledger::Ledger::from_entries(swapped));
    CHECK_FALSE(rep.accept);
    CHECK(rep.first_offending == std::optional<std::size_t>(agg));
  }

  TEST_CASE("a truncated transcript is incomplete")
  {
    auto const &base = honest().entries();
    for (std::size_t keep : {std::size_t{0}, std::size_t{3}, base.size() - 1})
    {
      std::vector<ledger::LedgerEntry> es(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(keep));
      auto rep = audit(ledger::Ledger::from_entries(es));
      CAPTURE(keep);
      CHECK_FALSE(rep.accept);
    }
  }

  TEST_CASE("audit_file: honest file, damaged line, missing file")
  {
    auto dir  = std::filesystem::temp_directory_path();
    auto path = (dir / "vpas-test-audit.jsonl").string();
    honest().save(path);
    CHECK(audit_file(path).accept);

    auto text = honest().to_jsonl();
    auto cut  = text.find('\n');
    text.insert(cut + 1, "{\"index\": oops}\n");
    std::ofstream(path, std::ios::trunc) << text;
    auto rep = audit_file(path);
    CHECK_FALSE(rep.accept);
    bool named = false;
    for (auto const &c : rep.checks)
    {
      named |= !c.ok && c.name == "parse" && c.detail.find("line 2") != std::string::npos;
    }
    CHECK(named);
    std::filesystem::remove(path);
    CHECK_ERROR(audit_file((dir / "vpas-test-missing.jsonl").string()), ErrorCode::kIo);
  }
}
