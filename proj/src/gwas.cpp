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

#include "vpas/gwas.hpp"
#include "vpas/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace vpas::gwas {

using algebra::Scalar;
using boost::multiprecision::cpp_int;

Genotype parse_genotype(std::string_view s)
{
  if (s == "AA")
  {
    return Genotype::kAA;
  }
  if (s == "Aa" || s == "aA")
  {
    return Genotype::kAa;
  }
  if (s == "aa")
  {
    return Genotype::kaa;
  }
  throw Error(ErrorCode::kParse, "invalid genotype '" + std::string(s) + "'");
}

std::string to_string(Genotype g)
{
  switch (g)
  {
  case Genotype::kAA:
    return "AA";
  case Genotype::kAa:
    return "Aa";
  case Genotype::kaa:
    return "aa";
  }
  return "?";
}

std::array<std::uint64_t, 3> encode_snp(Genotype g)
{
  std::array<std::uint64_t, 3> out{};
  out.at(static_cast<std::size_t>(g)) = 1;
  return out;
}

Tally tally(std::span<SnpRecord const> records, std::size_t snp)
{
  Tally t;
  for (auto const &r : records)
  {
    auto const         onehot = encode_snp(r.genotypes.at(snp));
    ContingencyCounts &c      = r.is_case ? t.case_counts : t.control_counts;
    c.n_AA += onehot[0];
    c.n_Aa += onehot[1];
    c.n_aa += onehot[2];
    c.n += 1;
  }
  return t;
}

AlleleCounts allele_counts(ContingencyCounts const &c)
{
  return {c.n_Aa + 2 * c.n_AA, c.n_Aa + 2 * c.n_aa};
}

Rational maf(ContingencyCounts const &c)
{
  if (c.n == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "MAF undefined for an empty population");
  }
  auto const a = allele_counts(c);
  return Rational(cpp_int(std::min(a.n_A, a.n_a)), cpp_int(2) * c.n);
}

Rational chi_squared(AlleleCounts const &cs, AlleleCounts const &ctl)
{
  if (ctl.n_A == 0 || ctl.n_a == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "chi-squared undefined: a control allele count is zero");
  }
  auto term = [](std::uint64_t x, std::uint64_t y) {
    cpp_int beta = cpp_int(x) - cpp_int(y);
    return Rational(beta * beta, cpp_int(y));
  };
  return term(cs.n_A, ctl.n_A) + term(cs.n_a, ctl.n_a);
}

std::vector<std::uint64_t> pack_message(ContingencyCounts const &cs, ContingencyCounts const &ctl,
                                        unsigned chunk_bits)
{
  std::vector<std::uint64_t> out{cs.n_AA,  cs.n_Aa,  cs.n_aa,  cs.n,
                                 ctl.n_AA, ctl.n_Aa, ctl.n_aa, ctl.n};
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    if (chunk_bits < 64 && out[i] >> chunk_bits != 0)
    {
      throw Error(ErrorCode::kNotInRange,
                  "count " + std::to_string(out[i]) + " does not fit in " +
                      std::to_string(chunk_bits) + " bits",
                  i);
    }
  }
  return out;
}

Tally unpack_message(std::span<std::uint64_t const> c)
{
  if (c.size() < 8)
  {
    throw Error(ErrorCode::kShapeMismatch, "a packed message has eight chunks");
  }
  for (std::size_t i = 8; i < c.size(); ++i)
  {
    if (c[i] != 0)
    {
      throw Error(ErrorCode::kDecode, "padding chunk is nonzero", i);
    }
  }
  return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
}

std::string to_decimal(Rational const &r, int places)
{
  cpp_int scale = 1;
  for (int i = 0; i < places; ++i)
  {
    scale *= 10;
  }
  cpp_int num  = boost::multiprecision::numerator(r);
  cpp_int den  = boost::multiprecision::denominator(r);
  bool    neg  = num < 0;
  num          = neg ? cpp_int(-num) : num;
  cpp_int q    = (num * scale * 2 + den) / (den * 2);
  cpp_int ipart = q / scale;
  cpp_int fpart = q % scale;
  std::string frac = fpart.str();
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  std::string out = (neg && q != 0 ? "-" : "") + ipart.str();
  if (places > 0)
  {
    out += "." + frac;
  }
  return out;
}

std::string to_fraction(Rational const &r)
{
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

SnpStats stats_from_counts(std::string name, Tally const &counts)
{
  SnpStats s;
  s.name   = std::move(name);
  s.counts = counts;
  auto attempt = [&s](char const *what, auto &&fn) {
    try
    {
      return std::optional<Rational>(fn());
    }
    catch (Error const &e)
    {
      s.errors.push_back(std::string(what) + ": " + e.what());
      return std::optional<Rational>();
    }
  };
  s.maf_case    = attempt("maf_case", [&] { return maf(counts.case_counts); });
  s.maf_control = attempt("maf_control", [&] { return maf(counts.control_counts); });
  s.chi2        = attempt("chi2", [&] {
    return chi_squared(allele_counts(counts.case_counts), allele_counts(counts.control_counts));
  });
  return s;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string trim(std::string s)
{
  auto const ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

std::vector<std::string> split(std::string const &line)
{
  std::vector<std::string> out;
  std::string              cell;
  std::istringstream       in(line);
  while (std::getline(in, cell, ','))
  {
    out.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == ',')
  {
    out.emplace_back();
  }
  return out;
}

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

Dataset parse_csv(std::string const &text)
{
  std::istringstream in(text);
  std::string        line;
  std::size_t        line_no = 0;
  auto               parse_error = [&](std::string const &msg) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + msg, line_no);
  };

  std::vector<std::string> header;
  while (std::getline(in, line))
  {
    ++line_no;
    if (!trim(line).empty())
    {
      header = split(line);
      break;
    }
  }
  if (header.size() < 3 || lower(header.front()) != "sample_id" ||
      lower(header.back()) != "population")
  {
    parse_error("header must be sample_id, snp columns..., population");
  }

  Dataset data;
  data.snp_names.assign(header.begin() + 1, header.end() - 1);
  std::size_t row = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (trim(line).empty())
    {
      continue;
    }
    ++row;
    auto cells = split(line);
    if (cells.size() != header.size())
    {
      parse_error("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                  " columns, expected " + std::to_string(header.size()));
    }
    SnpRecord rec;
    rec.sample_id = cells.front();
    for (std::size_t k = 0; k < data.snp_names.size(); ++k)
    {
      try
      {
        rec.genotypes.push_back(parse_genotype(cells[k + 1]));
      }
      catch (Error const &e)
      {
        parse_error("row " + std::to_string(row) + ", column " + data.snp_names[k] + " (sample " +
                    rec.sample_id + "): " + e.what());
      }
    }
    std::string const pop = lower(cells.back());
    if (pop != "case" && pop != "control")
    {
      parse_error("row " + std::to_string(row) + ", column population: expected case or control, got '" +
                  cells.back() + "'");
    }
    rec.is_case = pop == "case";
    data.records.push_back(std::move(rec));
  }
  return data;
}

Dataset load_csv(std::string const &path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f)
  {
    throw Error(ErrorCode::kIo, "cannot open CSV file '" + path + "'");
  }
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_csv(buf.str());
}

std::string to_csv(Dataset const &data)
{
  std::string out = "sample_id";
  for (auto const &n : data.snp_names)
  {
    out += "," + n;
  }
  out += ",population\n";
  for (auto const &r : data.records)
  {
    out += r.sample_id;
    for (auto g : r.genotypes)
    {
      out += "," + to_string(g);
    }
    out += r.is_case ? ",case\n" : ",control\n";
  }
  return out;
}

std::vector<SnpStats> gwas_oracle(Dataset const &data)
{
  std::vector<SnpStats> out;
  for (std::size_t k = 0; k < data.snp_names.size(); ++k)
  {
    out.push_back(stats_from_counts(data.snp_names[k], tally(data.records, k)));
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

GwasRun run_gwas(Dataset const &data, GwasConfig const &config)
{
  std::size_t const n     = config.n_clients;
  std::size_t const total = data.records.size();
  if (n == 0 || total < n)
  {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least one record per client (" + std::to_string(total) + " rows, " +
                    std::to_string(n) + " clients)");
  }
  if (data.snp_names.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "dataset has no SNP columns");
  }

  GwasRun                  run;
  std::vector<std::size_t> begin(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
  {
    begin[j] = j * total / n;
  }
  std::size_t largest = 0;
  for (std::size_t j = 0; j < n; ++j)
  {
    run.rows_per_client.push_back(begin[j + 1] - begin[j]);
    largest = std::max(largest, run.rows_per_client.back());
  }
  unsigned depth = config.merkle_depth;
  if (depth == 0)
  {
    depth = 1;
    while ((std::size_t{1} << depth) < largest)
    {
      ++depth;
    }
  }
  if (depth > 32 || (std::uint64_t{1} << depth) < largest)
  {
    throw Error(ErrorCode::kInvalidArgument,
                "merkle depth " + std::to_string(depth) + " cannot hold " +
                    std::to_string(largest) + " records per client");
  }
  run.merkle_depth = depth;

  protocol::ProtocolConfig pc;
  pc.n_clients            = n;
  pc.chunk_bits           = 32;
  pc.message_bits         = 256;
  pc.merkle_depth         = depth;
  pc.relation             = snark::RelationKind::kSnp;
  pc.max_per_client_value = largest;
  pc.seed                 = config.seed;
  protocol::Simulation sim(pc);
  sim.run_setup();

  for (std::size_t k = 0; k < data.snp_names.size(); ++k)
  {
    sim.post_query();
    for (std::size_t j = 0; j < n; ++j)
    {
      snark::MerkleTree tree(depth);
      for (std::size_t row = begin[j]; row < begin[j + 1]; ++row)
      {
        auto const &r = data.records[row];
        tree.insert(snark::snp_leaf(static_cast<std::uint64_t>(r.genotypes.at(k)), r.is_case));
      }
      Scalar const root = tree.root();
      sim.commit_data(j, root);
      for (std::size_t row = begin[j]; row < begin[j + 1]; ++row)
      {
        auto const   &r = data.records[row];
        std::uint64_t x = static_cast<std::uint64_t>(r.genotypes.at(k));
        snark::RelationInput in;
        in.chunks = snark::snp_chunks(x, r.is_case, pc.n_chunks());
        in.aux    = {root};
        in.snp    = snark::SnpWitness{x, r.is_case, tree.prove(row - begin[j])};
        sim.submit(j, in);
      }
    }
    sim.run_aggregate();
    auto released = sim.run_release();
    run.stats.push_back(stats_from_counts(data.snp_names[k], unpack_message(released)));
    run.released.push_back(std::move(released));
  }
  run.ledger  = sim.ledger();
  run.timings = sim.timings();
  return run;
}

std::string report_json(std::vector<SnpStats> const &stats)
{
  auto counts_json = [](ContingencyCounts const &c) {
    nlohmann::ordered_json j;
    j["AA"] = c.n_AA;
    j["Aa"] = c.n_Aa;
    j["aa"] = c.n_aa;
    j["N"]  = c.n;
    return j;
  };
  auto value = [](std::optional<Rational> const &r) {
    return r ? nlohmann::ordered_json(to_decimal(*r)) : nlohmann::ordered_json(nullptr);
  };
  auto exact = [](std::optional<Rational> const &r) {
    return r ? nlohmann::ordered_json(to_fraction(*r)) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json out;
  auto                  &arr = out["snps"] = nlohmann::ordered_json::array();
  for (auto const &s : stats)
  {
    nlohmann::ordered_json j;
    j["name"]              = s.name;
    j["case"]              = counts_json(s.counts.case_counts);
    j["control"]           = counts_json(s.counts.control_counts);
    j["maf_case"]          = value(s.maf_case);
    j["maf_control"]       = value(s.maf_control);
    j["chi2"]              = value(s.chi2);
    j["maf_case_exact"]    = exact(s.maf_case);
    j["maf_control_exact"] = exact(s.maf_control);
    j["chi2_exact"]        = exact(s.chi2);
    j["errors"]            = s.errors;
    arr.push_back(std::move(j));
  }
  return out.dump(2);
}

}  // namespace vpas::gwas
