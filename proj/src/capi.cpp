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

#include "vpas/vpas.h"

#include "vpas/elgamal.hpp"
#include "vpas/error.hpp"
#include "vpas/gwas.hpp"
#include "vpas/protocol.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <map>

using namespace vpas;
using nlohmann::ordered_json;

struct vpas_sim
{
  protocol::Simulation                    sim;
  Rng                                     input_rng;
  std::vector<std::vector<std::uint64_t>> inputs;
  std::optional<std::vector<std::uint64_t>> result;
};

namespace {

thread_local std::string g_last_error;

vpas_status status_for(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kSubmissionRejected:
  case ErrorCode::kAggregateRejected:
  case ErrorCode::kPokRejected:
  case ErrorCode::kUnsatisfied:
  case ErrorCode::kNotInRange:
  case ErrorCode::kParse:
    return VPAS_ERR_VALIDATION;
  case ErrorCode::kInvalidArgument:
  case ErrorCode::kShapeMismatch:
  case ErrorCode::kTreeFull:
  case ErrorCode::kIo:
    return VPAS_ERR_USAGE;
  case ErrorCode::kDecode:
  case ErrorCode::kDegenerate:
    return VPAS_ERR_INTERNAL;
  }
  return VPAS_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into a status and the error message.
template <typename Fn>
vpas_status guarded(Fn &&fn) noexcept
{
  try
  {
    g_last_error.clear();
    return fn();
  }
  catch (Error const &e)
  {
    g_last_error = std::string(to_string(e.code())) + ": " + e.what();
    return status_for(e.code());
  }
  catch (std::exception const &e)
  {
    g_last_error = std::string("internal error: ") + e.what();
    return VPAS_ERR_INTERNAL;
  }
  catch (...)
  {
    g_last_error = "internal error";
    return VPAS_ERR_INTERNAL;
  }
}

[[noreturn]] vpas_status usage(std::string msg)
{
  throw Error(ErrorCode::kInvalidArgument, msg);
}

char *dup_string(std::string const &s)
{
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr)
  {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

protocol::ProtocolConfig to_config(vpas_config const &c)
{
  protocol::ProtocolConfig pc;
  pc.n_clients            = c.n_clients;
  pc.chunk_bits           = c.chunk_bits;
  pc.message_bits         = c.message_bits == 0 ? 256 : c.message_bits;
  pc.merkle_depth         = c.merkle_depth == 0 ? 8 : c.merkle_depth;
  pc.relation             = snark::relation_from_string(c.relation ? c.relation : "range");
  pc.max_per_client_value = c.max_per_client_value;
  if (c.has_seed)
  {
    pc.seed = c.seed;
  }
  return pc;
}

vpas_status copy_out(std::vector<std::uint64_t> const &v, uint64_t *out, size_t capacity,
                     size_t *n)
{
  if (n != nullptr)
  {
    *n = v.size();
  }
  if (out != nullptr)
  {
    if (capacity < v.size())
    {
      return usage("output buffer holds " + std::to_string(capacity) + " chunks, need " +
                   std::to_string(v.size()));
    }
    std::copy(v.begin(), v.end(), out);
  }
  return VPAS_OK;
}

// Serialized sizes of every protocol object for one chunk width.
struct Sizes
{
  std::size_t n_chunks, pk_i, p1, pk_alpha, ct, w1, w2, pi_dve, pi_vre;
};

Sizes measure_sizes(unsigned chunk_bits, unsigned message_bits, Rng &rng)
{
  snark::RelationParams rel{snark::RelationKind::kTrivial, message_bits / chunk_bits, 0, 0};
  auto                  crs     = dve::setup(rel, chunk_bits, rng);
  auto [sk, partial]            = dve::dkg_partial(crs.pub, rng);
  std::vector<dve::PartialKey> ps{partial};
  auto                          combined = dve::dkg_combine(crs.pub, ps);
  std::vector<algebra::G1>      shares{dve::dkg_p1_share(sk, combined)};
  auto                          ck = dve::dkg_finalize(combined, shares);
  snark::RelationInput          in;
  in.chunks.assign(rel.n_chunks, 0);
  auto       enc   = dve::encrypt(crs, ck, in, rng);
  auto const beta  = elgamal::Keypair::generate(rng);
  auto       share = reencrypt::gen_share(enc.ct, partial, sk, beta.pk, rng);
  return {rel.n_chunks,
          partial.serialize().size(),
          algebra::G1::kCompressedSize,
          ck.serialize().size(),
          enc.ct.serialize().size(),
          share.w1_size(),
          share.w2_size(),
          enc.proof.serialize().size(),
          share.proof_size()};
}

ordered_json sizes_json(Sizes const &s)
{
  ordered_json j;
  j["pk_i"]     = s.pk_i;
  j["P1"]       = s.p1;
  j["pk_alpha"] = s.pk_alpha;
  j["CT"]       = s.ct;
  j["W1"]       = s.w1;
  j["W2"]       = s.w2;
  j["pi_DVE"]   = s.pi_dve;
  j["pi_VRE"]   = s.pi_vre;
  return j;
}

// Structural formulas in the number of chunks n, with 48-byte G1, 96-byte
// G2, 32-byte scalars and 8-byte vector length prefixes.
ordered_json formulas_json(std::size_t n)
{
  ordered_json j;
  j["pk_i"]     = 48 + (48 * n + 8) * 2 + (96 * (n + 1) + 8) + 48;
  j["P1"]       = 48;
  j["pk_alpha"] = 48 + (48 * n + 8) * 2 + (96 * (n + 1) + 8) + 48 + 48;
  j["CT"]       = (n + 2) * 48 + 8;
  j["W1"]       = 48;
  j["W2"]       = 48 * n + 8;
  j["pi_DVE"]   = 192;
  j["pi_VRE"]   = 128 * n + 136;
  return j;
}

ordered_json reference_json(unsigned chunk_bits)
{
  static std::map<unsigned, std::array<std::size_t, 8>> const table{
      {4, {12504, 48, 12552, 3176, 48, 3080, 192, 10248}},
      {8, {6360, 48, 6408, 1640, 48, 1544, 192, 5128}},
      {16, {3288, 48, 3336, 872, 48, 776, 192, 2568}},
      {32, {1752, 48, 1800, 488, 48, 392, 192, 1288}},
  };
  auto it = table.find(chunk_bits);
  if (it == table.end())
  {
    return nullptr;
  }
  auto const  &v = it->second;
  ordered_json j;
  char const  *names[] = {"pk_i", "P1", "pk_alpha", "CT", "W1", "W2", "pi_DVE", "pi_VRE"};
  for (std::size_t i = 0; i < 8; ++i)
  {
    j[names[i]] = v[i];
  }
  return j;
}

// Wall-clock cost of one proven encryption over a one-constraint relation
// against plain threshold ElGamal of the same chunks.
ordered_json overhead_json(protocol::ProtocolConfig const &cfg)
{
  Rng rng = cfg.seed ? Rng::seeded(*cfg.seed).fork("overhead") : Rng::system();
  snark::RelationParams rel{snark::RelationKind::kTrivial, cfg.n_chunks(), 0, 0};
  auto                  crs     = dve::setup(rel, cfg.chunk_bits, rng);
  auto [sk, partial]            = dve::dkg_partial(crs.pub, rng);
  std::vector<dve::PartialKey> ps{partial};
  auto                          combined = dve::dkg_combine(crs.pub, ps);
  std::vector<algebra::G1>      shares{dve::dkg_p1_share(sk, combined)};
  auto                          ck = dve::dkg_finalize(combined, shares);
  snark::RelationInput          in;
  in.chunks.assign(rel.n_chunks, 1);
  auto const eg = elgamal::dkg(1, rng);

  using Clock          = std::chrono::steady_clock;
  constexpr int  reps  = 5;
  auto           t0    = Clock::now();
  for (int i = 0; i < reps; ++i)
  {
    (void)dve::encrypt(crs, ck, in, rng);
  }
  double const dve_s = std::chrono::duration<double>(Clock::now() - t0).count() / reps;
  t0                 = Clock::now();
  for (int i = 0; i < reps; ++i)
  {
    for (std::size_t k = 0; k < rel.n_chunks; ++k)
    {
      (void)elgamal::encrypt(1, eg.pk_alpha, cfg.chunk_bits, rng);
    }
  }
  double const plain_s = std::chrono::duration<double>(Clock::now() - t0).count() / reps;

  ordered_json j;
  j["relation"]        = "trivial";
  j["enc_prove_s"]     = dve_s;
  j["plain_encrypt_s"] = plain_s;
  j["ratio"]           = plain_s > 0 ? dve_s / plain_s : 0.0;
  return j;
}

std::vector<std::uint64_t> expected_sums(vpas_sim const &s)
{
  std::vector<std::uint64_t> out(s.sim.config().n_chunks(), 0);
  for (auto const &v : s.inputs)
  {
    for (std::size_t i = 0; i < out.size(); ++i)
    {
      out[i] += v[i];
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char *vpas_last_error_message(void)
{
  return g_last_error.c_str();
}

void vpas_string_free(char *s)
{
  std::free(s);
}

vpas_status vpas_sim_create(const vpas_config *config, vpas_sim **out)
{
  return guarded([&] {
    if (config == nullptr || out == nullptr)
    {
      return usage("vpas_sim_create: null argument");
    }
    auto pc = to_config(*config);
    Rng  in = pc.seed ? Rng::seeded(*pc.seed).fork("inputs") : Rng::system();
    *out    = new vpas_sim{protocol::Simulation(pc), std::move(in), {}, {}};
    return VPAS_OK;
  });
}

void vpas_sim_free(vpas_sim *sim)
{
  delete sim;
}

vpas_status vpas_sim_run_setup(vpas_sim *sim)
{
  return guarded([&] {
    if (sim == nullptr)
    {
      return usage("null simulation handle");
    }
    sim->sim.run_setup();
    return VPAS_OK;
  });
}

vpas_status vpas_sim_submit_synthetic(vpas_sim *sim)
{
  return guarded([&] {
    if (sim == nullptr)
    {
      return usage("null simulation handle");
    }
    if (sim->sim.config().relation == snark::RelationKind::kSnp)
    {
      return usage("synthetic submissions need the range or trivial relation");
    }
    sim->sim.post_query();
    sim->inputs = sim->sim.synthetic_inputs(sim->input_rng);
    sim->result.reset();
    sim->sim.run_submit(sim->inputs);
    return VPAS_OK;
  });
}

vpas_status vpas_sim_aggregate(vpas_sim *sim)
{
  return guarded([&] {
    if (sim == nullptr)
    {
      return usage("null simulation handle");
    }
    sim->sim.run_aggregate();
    return VPAS_OK;
  });
}

vpas_status vpas_sim_release(vpas_sim *sim, uint64_t *out, size_t capacity, size_t *n_chunks)
{
  return guarded([&] {
    if (sim == nullptr)
    {
      return usage("null simulation handle");
    }
    if (!sim->result)
    {
      sim->result = sim->sim.run_release();
    }
    return copy_out(*sim->result, out, capacity, n_chunks);
  });
}

vpas_status vpas_sim_expected(const vpas_sim *sim, uint64_t *out, size_t capacity,
                              size_t *n_chunks)
{
  return guarded([&] {
    if (sim == nullptr || sim->inputs.empty())
    {
      return usage("no synthetic inputs have been submitted");
    }
    return copy_out(expected_sums(*sim), out, capacity, n_chunks);
  });
}

vpas_status vpas_sim_save_ledger(const vpas_sim *sim, const char *path)
{
  return guarded([&] {
    if (sim == nullptr || path == nullptr)
    {
      return usage("vpas_sim_save_ledger: null argument");
    }
    sim->sim.ledger().save(path);
    return VPAS_OK;
  });
}

vpas_status vpas_sim_manifest_json(vpas_sim *sim, const char *ledger_path, char **out_json)
{
  return guarded([&] {
    if (sim == nullptr || out_json == nullptr)
    {
      return usage("vpas_sim_manifest_json: null argument");
    }
    auto const &cfg = sim->sim.config();
    auto const &log = sim->sim.messages();

    ordered_json m;
    auto        &c             = m["config"];
    c["n_clients"]             = cfg.n_clients;
    c["chunk_bits"]            = cfg.chunk_bits;
    c["message_bits"]          = cfg.message_bits;
    c["n_chunks"]              = cfg.n_chunks();
    c["relation"]              = snark::to_string(cfg.relation);
    c["merkle_depth"]          = cfg.merkle_depth;
    c["max_per_client_value"]  = cfg.effective_max();
    c["value_bits"]            = cfg.value_bits();
    c["seed"]                  = cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr);
    m["parties"]               = sim->sim.party_ids();
    m["ledger"]                = ledger_path ? ordered_json(ledger_path) : ordered_json(nullptr);
    m["ledger_entries"]        = sim->sim.ledger().size();

    auto &t = m["timings_s"] = ordered_json::object();
    for (auto const &pt : sim->sim.timings())
    {
      t[pt.name] = pt.seconds;
    }
    auto &b = m["bytes"] = ordered_json::object();
    auto &k = m["messages"] = ordered_json::object();
    for (auto p : {protocol::Phase::kDkg, protocol::Phase::kQuery, protocol::Phase::kCommit,
                   protocol::Phase::kDve, protocol::Phase::kVa, protocol::Phase::kVre,
                   protocol::Phase::kRelease})
    {
      b[protocol::to_string(p)] = log.bytes(p);
      k[protocol::to_string(p)] = log.count(p);
    }
    m["dkg_rounds"]     = sim->sim.dkg_rounds();
    m["dkg_broadcasts"] = sim->sim.dkg_broadcasts();

    if (sim->result)
    {
      m["result"]             = *sim->result;
      m["expected"]           = expected_sums(*sim);
      m["matches_plaintext"]  = *sim->result == expected_sums(*sim);
    }
    auto report = protocol::audit(sim->sim.ledger());
    m["audit"]["accept"] = report.accept;
    m["audit"]["first_offending_entry"] =
        report.first_offending ? ordered_json(*report.first_offending) : ordered_json(nullptr);
    m["overhead"] = overhead_json(cfg);

    *out_json = dup_string(m.dump(2));
    return VPAS_OK;
  });
}

vpas_status vpas_run_gwas(const char *csv_path, size_t n_clients, unsigned merkle_depth,
                          int has_seed, uint64_t seed, const char *ledger_path, char **out_json)
{
  return guarded([&] {
    if (csv_path == nullptr || out_json == nullptr)
    {
      return usage("vpas_run_gwas: null argument");
    }
    auto             data = gwas::load_csv(csv_path);
    gwas::GwasConfig gc;
    gc.n_clients    = n_clients;
    gc.merkle_depth = merkle_depth;
    if (has_seed)
    {
      gc.seed = seed;
    }
    auto run = gwas::run_gwas(data, gc);
    if (ledger_path != nullptr)
    {
      run.ledger.save(ledger_path);
    }
    auto report = ordered_json::parse(gwas::report_json(run.stats));
    report["clients"]         = n_clients;
    report["rows_per_client"] = run.rows_per_client;
    report["merkle_depth"]    = run.merkle_depth;
    report["samples"]         = data.records.size();
    report["matches_oracle"]  = run.stats == gwas::gwas_oracle(data);
    report["ledger"]          = ledger_path ? ordered_json(ledger_path) : ordered_json(nullptr);
    *out_json                 = dup_string(report.dump(2));
    return VPAS_OK;
  });
}

vpas_status vpas_gwas_oracle(const char *csv_path, char **out_json)
{
  return guarded([&] {
    if (csv_path == nullptr || out_json == nullptr)
    {
      return usage("vpas_gwas_oracle: null argument");
    }
    *out_json = dup_string(gwas::report_json(gwas::gwas_oracle(gwas::load_csv(csv_path))));
    return VPAS_OK;
  });
}

vpas_status vpas_audit_file(const char *ledger_path, char **out_json)
{
  return guarded([&] {
    if (ledger_path == nullptr || out_json == nullptr)
    {
      return usage("vpas_audit_file: null argument");
    }
    auto report = protocol::audit_file(ledger_path);
    *out_json   = dup_string(report.to_json());
    if (!report.accept)
    {
      g_last_error = "audit rejected the ledger";
      if (report.first_offending)
      {
        g_last_error += " at entry " + std::to_string(*report.first_offending);
      }
      return VPAS_ERR_AUDIT;
    }
    return VPAS_OK;
  });
}

vpas_status vpas_bench_sizes(const unsigned *chunk_bits, size_t count, unsigned message_bits,
                             char **out_json)
{
  return guarded([&] {
    if (chunk_bits == nullptr || count == 0 || out_json == nullptr)
    {
      return usage("vpas_bench_sizes: need at least one chunk width");
    }
    unsigned const mb  = message_bits == 0 ? 256 : message_bits;
    Rng            rng = Rng::system();
    ordered_json   out = ordered_json::array();
    for (size_t i = 0; i < count; ++i)
    {
      unsigned const cb = chunk_bits[i];
      if (cb == 0 || cb > 32 || mb % cb != 0)
      {
        return usage("chunk width " + std::to_string(cb) + " does not divide " +
                     std::to_string(mb) + " message bits");
      }
      auto         s = measure_sizes(cb, mb, rng);
      ordered_json row;
      row["chunk_bits"] = cb;
      row["n_chunks"]   = s.n_chunks;
      row["measured"]   = sizes_json(s);
      row["formula"]    = formulas_json(s.n_chunks);
      row["reference"]  = mb == 256 ? reference_json(cb) : ordered_json(nullptr);
      out.push_back(std::move(row));
    }
    *out_json = dup_string(out.dump(2));
    return VPAS_OK;
  });
}

}  // extern "C"
