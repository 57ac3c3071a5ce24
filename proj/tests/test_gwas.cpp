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

#include "cohorts.hpp"
#include "support.hpp"

#include "vpas/gwas.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace vpas;
using namespace vpas::gwas;

namespace {

ContingencyCounts counts(std::uint64_t aa_major, std::uint64_t het, std::uint64_t aa_minor)
{
  return {aa_major, het, aa_minor, aa_major + het + aa_minor};
}

std::string error_text(std::string const &csv)
{
  try
  {
    parse_csv(csv);
  }
  catch (Error const &e)
  {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("gwas")
{
  TEST_CASE("genotype symbols and one-hot encoding")
  {
    CHECK(encode_snp(parse_genotype("AA")) == std::array<std::uint64_t, 3>{1, 0, 0});
    CHECK(encode_snp(parse_genotype("Aa")) == std::array<std::uint64_t, 3>{0, 1, 0});
    CHECK(encode_snp(parse_genotype("aA")) == std::array<std::uint64_t, 3>{0, 1, 0});
    CHECK(encode_snp(parse_genotype("aa")) == std::array<std::uint64_t, 3>{0, 0, 1});
    for (auto g : {Genotype::kAA, Genotype::kAa, Genotype::kaa})
    {
      CHECK(parse_genotype(to_string(g)) == g);
    }
    for (char const *bad : {"AG", "A", "", "AAA", "TT"})
    {
      CHECK_ERROR(parse_genotype(bad), ErrorCode::kParse);
    }
  }

  TEST_CASE("tally by hand")
  {
    std::vector<SnpRecord> recs{{"a", {Genotype::kAA}, true},
                                {"b", {Genotype::kAa}, true},
                                {"c", {Genotype::kaa}, false}};
    auto t = tally(recs, 0);
    CHECK(t.case_counts == ContingencyCounts{1, 1, 0, 2});
    CHECK(t.control_counts == ContingencyCounts{0, 0, 1, 1});
    CHECK(tally(std::vector<SnpRecord>{}, 0) == Tally{});
  }

  TEST_CASE("allele counts")
  {
    auto a = allele_counts(counts(3, 2, 5));
    CHECK(a.n_A == 8);
    CHECK(a.n_a == 12);
    auto b = allele_counts(counts(7, 0, 0));
    CHECK(b.n_A == 14);
    CHECK(b.n_a == 0);
  }

  TEST_CASE("minor allele frequency fixtures")
  {
    CHECK(maf(counts(3, 2, 5)) == Rational(2, 5));
    CHECK(to_decimal(maf(counts(3, 2, 5))) == "0.400000");
    CHECK(maf(counts(0, 9, 0)) == Rational(1, 2));
    CHECK(maf(counts(4, 0, 0)) == 0);
    CHECK_ERROR(maf(ContingencyCounts{}), ErrorCode::kInvalidArgument);
  }

  TEST_CASE("chi-squared fixtures")
  {
    CHECK(chi_squared({10, 6}, {8, 8}) == 1);
    CHECK(to_decimal(chi_squared({10, 6}, {8, 8})) == "1.000000");
    CHECK(chi_squared({5, 9}, {5, 9}) == 0);
    CHECK(chi_squared({1, 2}, {3, 4}) == Rational(4, 3) + Rational(4, 4));
    CHECK_ERROR(chi_squared({1, 1}, {0, 4}), ErrorCode::kInvalidArgument);
  }

  TEST_CASE("decimal rendering rounds half away from zero")
  {
    CHECK(to_decimal(Rational(1, 3)) == "0.333333");
    CHECK(to_decimal(Rational(2, 3)) == "0.666667");
    CHECK(to_decimal(Rational(1, 2000000)) == "0.000001");  // exactly half of the last place
    CHECK(to_decimal(Rational(5)) == "5.000000");
    CHECK(to_fraction(Rational(6, 4)) == "3/2");
  }

  TEST_CASE("message packing round-trips and enforces the chunk width")
  {
    auto zero = pack_message({}, {}, 8);
    CHECK(zero == std::vector<std::uint64_t>(8, 0));
    CHECK(unpack_message(zero) == Tally{});

    ContingencyCounts c{1, 2, 3, 6}, k{4, 5, 6, 15};
    auto packed = pack_message(c, k, 8);
    CHECK(packed == std::vector<std::uint64_t>{1, 2, 3, 6, 4, 5, 6, 15});
    CHECK(unpack_message(packed) == Tally{c, k});

    auto padded = packed;
    padded.resize(12, 0);
    CHECK(unpack_message(padded) == Tally{c, k});
    padded[10] = 1;
    CHECK(vpas::test::error_of([&] { unpack_message(padded); }).has_value());

    CHECK_ERROR(pack_message({256, 0, 0, 256}, {}, 8), ErrorCode::kNotInRange);
    CHECK_NOTHROW(pack_message({255, 0, 0, 255}, {}, 8));
  }

  TEST_CASE("statistics from counts record undefined values as errors")
  {
    auto s = stats_from_counts("rs1", {counts(3, 2, 5), counts(0, 0, 0)});
    CHECK(s.maf_case == Rational(2, 5));
    CHECK_FALSE(s.maf_control.has_value());
    CHECK_FALSE(s.chi2.has_value());
    CHECK(s.errors.size() == 2);
  }

  TEST_CASE("CSV parsing and error locations")
  {
    std::string const ok = "sample_id,rs1,rs2,population\n"
                           "p1,AA,Aa,case\n"
                           "p2,aa,aA,control\n";
    auto d = parse_csv(ok);
    CHECK(d.snp_names == std::vector<std::string>{"rs1", "rs2"});
    REQUIRE(d.records.size() == 2);
    CHECK(d.records[1].genotypes[1] == Genotype::kAa);
    CHECK_FALSE(d.records[1].is_case);
    CHECK(parse_csv(to_csv(d)).records.size() == 2);

    auto msg = error_text("sample_id,rs1,rs2,population\np1,AA,Aa,case\np2,AG,aa,control\n");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("rs1") != std::string::npos);
    CHECK(msg.find("AG") != std::string::npos);

    CHECK(error_text("id,rs1,population\n").find("header") != std::string::npos);
    CHECK(error_text("sample_id,rs1,population\np1,AA\n").find("columns") != std::string::npos);
    CHECK(error_text("sample_id,rs1,population\np1,AA,both\n").find("population") !=
          std::string::npos);
    CHECK_ERROR(load_csv("/nonexistent/cohort.csv"), ErrorCode::kIo);
  }

  TEST_CASE("library oracle agrees with the direct count")
  {
    Rng  rng = Rng::seeded(61);
    auto d   = vpas::test::make_cohort(rng, 60, 4);
    auto st  = gwas_oracle(d);
    REQUIRE(st.size() == 4);
    for (std::size_t k = 0; k < 4; ++k)
    {
      CHECK(vpas::test::matches_oracle(st[k], vpas::test::oracle_stats(d, k)));
    }
  }

  TEST_CASE("protocol statistics equal the oracle")
  {
    Rng  rng = Rng::seeded(62);
    auto d   = vpas::test::make_cohort(rng, 9, 2);
    for (std::size_t clients : {1u, 3u})
    {
      GwasConfig cfg;
      cfg.n_clients = clients;
      cfg.seed      = 5;
      auto run      = run_gwas(d, cfg);
      REQUIRE(run.stats.size() == 2);
      for (std::size_t k = 0; k < 2; ++k)
      {
        CHECK(vpas::test::matches_oracle(run.stats[k], vpas::test::oracle_stats(d, k)));
      }
      std::size_t rows = 0;
      for (auto r : run.rows_per_client)
      {
        rows += r;
      }
      CHECK(rows == 9);
      CHECK(protocol::audit(run.ledger).accept);
    }
  }

  TEST_CASE("empty control population fails identically in both paths")
  {
    gwas::Dataset d;
    d.snp_names = {"rs1"};
    d.records   = {{"a", {Genotype::kAA}, true}, {"b", {Genotype::kAa}, true}};
    auto oracle = gwas_oracle(d);
    GwasConfig cfg;
    cfg.n_clients = 2;
    cfg.seed      = 1;
    auto run      = run_gwas(d, cfg);
    CHECK(run.stats == oracle);
    CHECK_FALSE(oracle[0].maf_control.has_value());
    CHECK_FALSE(oracle[0].errors.empty());
  }

  TEST_CASE("report JSON layout")
  {
    auto s = stats_from_counts("rs9", {counts(3, 2, 5), counts(2, 4, 2)});
    auto j = nlohmann::json::parse(report_json({s}));
    REQUIRE(j["snps"].size() == 1);
    auto const &e = j["snps"][0];
    CHECK(e["name"] == "rs9");
    CHECK(e["maf_case"] == "0.400000");
    CHECK(e["maf_control"] == "0.500000");
    CHECK(e["case"]["N"] == 10);
    CHECK(e["chi2_exact"].is_string());
  }
}
