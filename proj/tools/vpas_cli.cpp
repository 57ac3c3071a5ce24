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

// vpas: command-line simulator over the C interface.
//
//   vpas run --clients N --chunk-bits B [--message-bits M] [--seed S] [--ledger PATH]
//   vpas gwas --input CSV --clients N [--merkle-depth D] [--seed S] [--ledger PATH]
//   vpas audit --ledger PATH
//   vpas bench-sizes [--chunk-bits 4,8,16,32]
//
// Exit codes: 0 success, 2 validation rejection, 3 audit failure, 4 usage.

#include "vpas/vpas.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 4;

struct SimDeleter
{
  void operator()(vpas_sim *s) const
  {
    vpas_sim_free(s);
  }
};
using SimPtr = std::unique_ptr<vpas_sim, SimDeleter>;

// Owns a string returned through the C interface.
std::string take(char *s)
{
  std::string out = s ? s : "";
  vpas_string_free(s);
  return out;
}

int fail(vpas_status st, char const *what)
{
  std::cerr << "vpas: " << what << ": " << vpas_last_error_message() << "\n";
  return static_cast<int>(st);
}

bool write_text(std::string const &path, std::string const &text)
{
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text << "\n";
  return static_cast<bool>(f);
}

int emit(std::string const &json, std::string const &path)
{
  if (path.empty())
  {
    std::cout << json << "\n";
    return 0;
  }
  if (!write_text(path, json))
  {
    std::cerr << "vpas: cannot write " << path << "\n";
    return kExitUsage;
  }
  return 0;
}

// ---------------------------------------------------------------- run

struct RunArgs
{
  std::size_t                  clients      = 2;
  unsigned                     chunk_bits   = 8;
  unsigned                     message_bits = 256;
  std::string                  relation     = "range";
  std::uint64_t                max_value    = 0;
  std::optional<std::uint64_t> seed;
  std::string                  ledger;
  std::string                  manifest;
};

int cmd_run(RunArgs const &a)
{
  vpas_config cfg{};
  cfg.n_clients            = a.clients;
  cfg.chunk_bits           = a.chunk_bits;
  cfg.message_bits         = a.message_bits;
  cfg.relation             = a.relation.c_str();
  cfg.max_per_client_value = a.max_value;
  cfg.has_seed             = a.seed.has_value();
  cfg.seed                 = a.seed.value_or(0);

  vpas_sim   *raw = nullptr;
  vpas_status st  = vpas_sim_create(&cfg, &raw);
  if (st != VPAS_OK)
  {
    return fail(st, "invalid configuration");
  }
  SimPtr sim(raw);

  // save whatever transcript exists, even after an abort
  auto save = [&] {
    if (!a.ledger.empty() && vpas_sim_save_ledger(sim.get(), a.ledger.c_str()) != VPAS_OK)
    {
      std::cerr << "vpas: " << vpas_last_error_message() << "\n";
    }
  };

  if ((st = vpas_sim_run_setup(sim.get())) != VPAS_OK)
  {
    save();
    return fail(st, "setup");
  }
  if ((st = vpas_sim_submit_synthetic(sim.get())) != VPAS_OK)
  {
    save();
    return fail(st, "submit");
  }
  if ((st = vpas_sim_aggregate(sim.get())) != VPAS_OK)
  {
    save();
    return fail(st, "aggregate");
  }
  std::size_t n = 0;
  if ((st = vpas_sim_release(sim.get(), nullptr, 0, &n)) != VPAS_OK)
  {
    save();
    return fail(st, "release");
  }
  save();

  char *manifest = nullptr;
  if ((st = vpas_sim_manifest_json(sim.get(), a.ledger.empty() ? nullptr : a.ledger.c_str(),
                                   &manifest)) != VPAS_OK)
  {
    return fail(st, "manifest");
  }
  std::string const json = take(manifest);
  auto const        m    = nlohmann::json::parse(json);
  if (!m.value("matches_plaintext", false))
  {
    std::cerr << "vpas: released result differs from the plaintext sums\n";
    emit(json, a.manifest);
    return 5;
  }
  if (!a.manifest.empty())
  {
    std::cout << "released " << m["result"].size() << " chunks, matches plaintext sums; audit "
              << (m["audit"]["accept"].get<bool>() ? "accept" : "reject") << "\n";
  }
  return emit(json, a.manifest);
}

// ---------------------------------------------------------------- gwas

struct GwasArgs
{
  std::string                  input;
  std::size_t                  clients      = 2;
  unsigned                     merkle_depth = 0;
  std::optional<std::uint64_t> seed;
  std::string                  ledger;
  std::string                  output;
};

int cmd_gwas(GwasArgs const &a)
{
  char       *json = nullptr;
  vpas_status st   = vpas_run_gwas(a.input.c_str(), a.clients, a.merkle_depth, a.seed.has_value(),
                                   a.seed.value_or(0), a.ledger.empty() ? nullptr : a.ledger.c_str(),
                                   &json);
  if (st != VPAS_OK)
  {
    return fail(st, "gwas");
  }
  return emit(take(json), a.output);
}

// ---------------------------------------------------------------- audit

int cmd_audit(std::string const &ledger, std::string const &output)
{
  char       *json = nullptr;
  vpas_status st   = vpas_audit_file(ledger.c_str(), &json);
  if (st != VPAS_OK && st != VPAS_ERR_AUDIT)
  {
    return fail(st, "audit");
  }
  std::string const text = take(json);
  auto const        r    = nlohmann::json::parse(text);
  if (st == VPAS_ERR_AUDIT)
  {
    std::cerr << "audit: reject";
    if (!r["first_offending_entry"].is_null())
    {
      std::cerr << ", first offending entry " << r["first_offending_entry"].get<std::size_t>();
    }
    for (auto const &c : r["checks"])
    {
      if (!c["ok"].get<bool>())
      {
        std::cerr << "\n  " << c["name"].get<std::string>();
        if (!c["entry"].is_null())
        {
          std::cerr << " [entry " << c["entry"].get<std::size_t>() << "]";
        }
        std::cerr << ": " << c["detail"].get<std::string>();
      }
    }
    std::cerr << "\n";
  }
  int const rc = emit(text, output);
  return st == VPAS_ERR_AUDIT ? 3 : rc;
}

// ---------------------------------------------------------------- bench-sizes

int cmd_bench_sizes(std::vector<unsigned> const &widths, unsigned message_bits, bool as_json)
{
  char       *json = nullptr;
  vpas_status st   = vpas_bench_sizes(widths.data(), widths.size(), message_bits, &json);
  if (st != VPAS_OK)
  {
    return fail(st, "bench-sizes");
  }
  std::string const text = take(json);
  if (as_json)
  {
    std::cout << text << "\n";
    return 0;
  }
  auto const rows = nlohmann::json::parse(text);
  std::cout << std::left << std::setw(10) << "object";
  for (auto const &r : rows)
  {
    std::cout << std::right << std::setw(22) << (std::to_string(r["chunk_bits"].get<unsigned>()) + "-bit");
  }
  std::cout << "\n" << std::left << std::setw(10) << "";
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    std::cout << std::right << std::setw(22) << "meas / formula / ref";
  }
  std::cout << "\n";
  for (char const *name : {"pk_i", "P1", "pk_alpha", "CT", "W1", "W2", "pi_DVE", "pi_VRE"})
  {
    std::cout << std::left << std::setw(10) << name;
    for (auto const &r : rows)
    {
      std::string cell = std::to_string(r["measured"][name].get<std::size_t>()) + " / " +
                         std::to_string(r["formula"][name].get<std::size_t>()) + " / " +
                         (r["reference"].is_null()
                              ? std::string("-")
                              : std::to_string(r["reference"][name].get<std::size_t>()));
      std::cout << std::right << std::setw(22) << cell;
    }
    std::cout << "\n";
  }
  std::cout << "formula: n = message_bits / chunk_bits chunks, |G1| = 48, |G2| = 96, "
               "|Fr| = 32, 8-byte vector prefixes\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"VPAS simulator: verifiable privacy-preserving aggregate statistics"};
  app.require_subcommand(1);

  RunArgs run;
  auto   *run_cmd = app.add_subcommand("run", "end-to-end simulation on synthetic inputs");
  run_cmd->add_option("--clients", run.clients, "number of clients")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--chunk-bits", run.chunk_bits, "chunk width")
      ->check(CLI::IsMember({4u, 8u, 16u, 32u}));
  run_cmd->add_option("--message-bits", run.message_bits, "message width")->default_val(256);
  run_cmd->add_option("--relation", run.relation, "validation relation")
      ->check(CLI::IsMember({"range", "trivial"}));
  run_cmd->add_option("--max-value", run.max_value, "per-client value bound (0: largest that fits)");
  run_cmd->add_option("--seed", run.seed, "deterministic run seed");
  run_cmd->add_option("--ledger", run.ledger, "write the ledger JSON-lines file here");
  run_cmd->add_option("--manifest", run.manifest, "write the run manifest here instead of stdout");

  GwasArgs gw;
  auto    *gwas_cmd = app.add_subcommand("gwas", "MAF and chi-squared over a genotype CSV");
  gwas_cmd->add_option("--input", gw.input, "CSV: sample_id, snp_1..snp_m, population")->required();
  gwas_cmd->add_option("--clients", gw.clients, "number of clients")->check(CLI::PositiveNumber);
  gwas_cmd->add_option("--merkle-depth", gw.merkle_depth, "data tree depth (0: smallest that fits)");
  gwas_cmd->add_option("--seed", gw.seed, "deterministic run seed");
  gwas_cmd->add_option("--ledger", gw.ledger, "write the ledger JSON-lines file here");
  gwas_cmd->add_option("--output", gw.output, "write the report here instead of stdout");

  std::string audit_ledger, audit_output;
  auto       *audit_cmd = app.add_subcommand("audit", "verify a ledger file offline");
  audit_cmd->add_option("--ledger", audit_ledger, "ledger JSON-lines file")->required();
  audit_cmd->add_option("--output", audit_output, "write the report here instead of stdout");

  std::vector<unsigned> widths{4, 8, 16, 32};
  unsigned              bench_mb   = 256;
  bool                  bench_json = false;
  auto *bench_cmd = app.add_subcommand("bench-sizes", "serialized sizes per chunk width");
  bench_cmd->add_option("--chunk-bits", widths, "chunk widths")->delimiter(',');
  bench_cmd->add_option("--message-bits", bench_mb, "message width");
  bench_cmd->add_flag("--json", bench_json, "print JSON instead of a table");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForAllHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e);
    return kExitUsage;
  }

  if (*run_cmd)
  {
    return cmd_run(run);
  }
  if (*gwas_cmd)
  {
    return cmd_gwas(gw);
  }
  if (*audit_cmd)
  {
    return cmd_audit(audit_ledger, audit_output);
  }
  return cmd_bench_sizes(widths, bench_mb, bench_json);
}
