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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vpas/vpas.h"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::string take(char *s)
{
  std::string out = s ? s : "";
  vpas_string_free(s);
  return out;
}

vpas_config make_config(size_t n, unsigned chunk_bits, uint64_t seed)
{
  vpas_config c{};
  c.n_clients    = n;
  c.chunk_bits   = chunk_bits;
  c.message_bits = 256;
  c.has_seed     = 1;
  c.seed         = seed;
  return c;
}

std::string temp(std::string const &name)
{
  return (std::filesystem::temp_directory_path() / ("vpas-capi-" + name)).string();
}

struct Sim
{
  vpas_sim *h = nullptr;
  ~Sim()
  {
    vpas_sim_free(h);
  }
};

}  // namespace

TEST_SUITE("capi")
{
  TEST_CASE("full run through the handle")
  {
    auto cfg = make_config(3, 16, 12);
    Sim  s;
    REQUIRE(vpas_sim_create(&cfg, &s.h) == VPAS_OK);
    REQUIRE(vpas_sim_run_setup(s.h) == VPAS_OK);
    REQUIRE(vpas_sim_submit_synthetic(s.h) == VPAS_OK);
    REQUIRE(vpas_sim_aggregate(s.h) == VPAS_OK);

    size_t n = 0;
    REQUIRE(vpas_sim_release(s.h, nullptr, 0, &n) == VPAS_OK);
    CHECK(n == 16);
    std::vector<uint64_t> got(n), want(n);
    CHECK(vpas_sim_release(s.h, got.data(), got.size(), &n) == VPAS_OK);
    CHECK(vpas_sim_expected(s.h, want.data(), want.size(), &n) == VPAS_OK);
    CHECK(got == want);
    CHECK(std::string(vpas_last_error_message()).empty());

    // a short buffer is a usage error
    std::vector<uint64_t> small(3);
    CHECK(vpas_sim_release(s.h, small.data(), small.size(), &n) == VPAS_ERR_USAGE);
    CHECK(std::string(vpas_last_error_message()).find("need 16") != std::string::npos);

    auto path = temp("run.jsonl");
    REQUIRE(vpas_sim_save_ledger(s.h, path.c_str()) == VPAS_OK);
    char *m = nullptr;
    REQUIRE(vpas_sim_manifest_json(s.h, path.c_str(), &m) == VPAS_OK);
    auto manifest = nlohmann::json::parse(take(m));
    CHECK(manifest["matches_plaintext"] == true);
    CHECK(manifest["audit"]["accept"] == true);
    CHECK(manifest["dkg_broadcasts"] == 6);
    CHECK(manifest["config"]["n_clients"] == 3);
    CHECK(manifest["result"].get<std::vector<uint64_t>>() == got);
    CHECK(manifest["bytes"]["va"].get<size_t>() == (16 + 2) * 48 + 8);

    char *report = nullptr;
    CHECK(vpas_audit_file(path.c_str(), &report) == VPAS_OK);
    CHECK(nlohmann::json::parse(take(report))["accept"] == true);

    // flip one payload hex digit: the audit verdict is reject
    std::ifstream in(path);
    std::string   text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto          pos = text.find("\"payload\":\"") + 12;
    text[pos]         = text[pos] == '0' ? '1' : '0';
    std::ofstream(path, std::ios::trunc) << text;
    CHECK(vpas_audit_file(path.c_str(), &report) == VPAS_ERR_AUDIT);
    auto rej = nlohmann::json::parse(take(report));
    CHECK(rej["accept"] == false);
    CHECK(rej["first_offending_entry"] == 0);
    std::remove(path.c_str());
  }

  TEST_CASE("argument and ordering errors")
  {
    vpas_sim *h = nullptr;
    CHECK(vpas_sim_create(nullptr, &h) == VPAS_ERR_USAGE);
    auto bad = make_config(2, 12, 1);
    CHECK(vpas_sim_create(&bad, &h) == VPAS_ERR_USAGE);
    CHECK(h == nullptr);
    CHECK_FALSE(std::string(vpas_last_error_message()).empty());

    auto unknown     = make_config(2, 8, 1);
    unknown.relation = "median";
    CHECK(vpas_sim_create(&unknown, &h) == VPAS_ERR_USAGE);

    auto cfg = make_config(2, 8, 1);
    Sim  s;
    REQUIRE(vpas_sim_create(&cfg, &s.h) == VPAS_OK);
    CHECK(vpas_sim_aggregate(s.h) == VPAS_ERR_USAGE);
    CHECK(vpas_sim_run_setup(nullptr) == VPAS_ERR_USAGE);

    char *out = nullptr;
    CHECK(vpas_audit_file(temp("missing.jsonl").c_str(), &out) == VPAS_ERR_USAGE);
    CHECK(out == nullptr);
    vpas_sim_free(nullptr);
    vpas_string_free(nullptr);
  }

  TEST_CASE("size table")
  {
    unsigned widths[] = {4, 8, 16, 32};
    char    *json     = nullptr;
    REQUIRE(vpas_bench_sizes(widths, 4, 256, &json) == VPAS_OK);
    auto rows = nlohmann::json::parse(take(json));
    REQUIRE(rows.size() == 4);
    for (auto const &r : rows)
    {
      size_t n = 256 / r["chunk_bits"].get<unsigned>();
      CHECK(r["n_chunks"] == n);
      CHECK(r["measured"]["CT"] == (n + 2) * 48 + 8);
      CHECK(r["measured"]["pi_DVE"] == 192);
      CHECK(r["measured"] == r["formula"]);
    }
    CHECK(vpas_bench_sizes(widths, 0, 256, &json) == VPAS_ERR_USAGE);
  }

  TEST_CASE("GWAS on a file")
  {
    auto csv = temp("cohort.csv");
    std::ofstream(csv) << "sample_id,rs1,population\n"
                          "a,AA,case\nb,Aa,case\nc,aa,control\nd,Aa,control\n";
    char *report = nullptr;
    REQUIRE(vpas_run_gwas(csv.c_str(), 2, 0, 1, 3, nullptr, &report) == VPAS_OK);
    auto r = nlohmann::json::parse(take(report));
    char *oracle = nullptr;
    REQUIRE(vpas_gwas_oracle(csv.c_str(), &oracle) == VPAS_OK);
    auto o = nlohmann::json::parse(take(oracle));
    CHECK(r["snps"] == o["snps"]);
    // case alleles A = 2 + 1, a = 1; control A = 1, a = 2 + 1
    CHECK(r["snps"][0]["maf_case"] == "0.250000");
    CHECK(r["snps"][0]["chi2_exact"] == "16/3");

    std::ofstream(csv, std::ios::trunc) << "sample_id,rs1,population\na,AG,case\n";
    CHECK(vpas_run_gwas(csv.c_str(), 1, 0, 1, 3, nullptr, &report) == VPAS_ERR_VALIDATION);
    CHECK(std::string(vpas_last_error_message()).find("AG") != std::string::npos);
    std::remove(csv.c_str());
    CHECK(vpas_run_gwas(csv.c_str(), 1, 0, 1, 3, nullptr, &report) == VPAS_ERR_USAGE);
  }
}
