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

// Genome-wide association case study: one-hot genotype encoding, per
// population contingency counts, allele frequencies and the allelic
// chi-squared statistic in exact rational arithmetic, plus the end-to-end
// pipeline that obtains the pooled counts through the protocol.

#include "vpas/protocol.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vpas::gwas {

using Rational = boost::multiprecision::cpp_rational;

enum class Genotype : std::uint8_t
{
  kAA = 0,
  kAa = 1,
  kaa = 2,
};

/// "AA", "Aa", "aA" or "aa"; anything else is Error(kParse).
Genotype    parse_genotype(std::string_view symbol);
std::string to_string(Genotype g);

/// One-hot (c0, c1, c2).
std::array<std::uint64_t, 3> encode_snp(Genotype g);

struct SnpRecord
{
  std::string           sample_id;
  std::vector<Genotype> genotypes;  // one per SNP
  bool                  is_case = false;
};

struct ContingencyCounts
{
  std::uint64_t n_AA = 0;
  std::uint64_t n_Aa = 0;
  std::uint64_t n_aa = 0;
  std::uint64_t n    = 0;

  bool consistent() const
  {
    return n_AA + n_Aa + n_aa == n;
  }

  friend bool operator==(ContingencyCounts const &, ContingencyCounts const &) = default;
};

struct Tally
{
  ContingencyCounts case_counts;
  ContingencyCounts control_counts;

  friend bool operator==(Tally const &, Tally const &) = default;
};

Tally tally(std::span<SnpRecord const> records, std::size_t snp);

struct AlleleCounts
{
  std::uint64_t n_A = 0;  // N_Aa + 2 N_AA
  std::uint64_t n_a = 0;  // N_Aa + 2 N_aa
};

AlleleCounts allele_counts(ContingencyCounts const &c);

/// min(N_A, N_a) / 2N; Error(kInvalidArgument) for N = 0.
Rational maf(ContingencyCounts const &c);

/// sum over alleles of (case - control)^2 / control; Error(kInvalidArgument)
/// when a control allele count is zero.
Rational chi_squared(AlleleCounts const &case_alleles, AlleleCounts const &control_alleles);

/// Eight chunks: case (AA, Aa, aa, N) then control (AA, Aa, aa, N).
/// Error(kNotInRange) if a count does not fit in chunk_bits.
std::vector<std::uint64_t> pack_message(ContingencyCounts const &case_counts,
                                        ContingencyCounts const &control_counts,
                                        unsigned chunk_bits);

/// Inverse of pack_message; trailing chunks beyond eight must be zero.
Tally unpack_message(std::span<std::uint64_t const> chunks);

/// Rounded half away from zero to `places` decimals.
std::string to_decimal(Rational const &r, int places = 6);
std::string to_fraction(Rational const &r);

struct SnpStats
{
  std::string             name;
  Tally                   counts;
  std::optional<Rational> maf_case;
  std::optional<Rational> maf_control;
  std::optional<Rational> chi2;
  std::vector<std::string> errors;

  friend bool operator==(SnpStats const &, SnpStats const &) = default;
};

/// Statistics from pooled counts; undefined ones carry an error message.
SnpStats stats_from_counts(std::string name, Tally const &counts);

struct Dataset
{
  std::vector<std::string> snp_names;
  std::vector<SnpRecord>   records;
};

/// Columns sample_id, snp_1..snp_m, population (case/control). Errors name
/// the row and column.
Dataset parse_csv(std::string const &text);
Dataset load_csv(std::string const &path);
std::string to_csv(Dataset const &data);

/// Plaintext reference: pools every record directly.
std::vector<SnpStats> gwas_oracle(Dataset const &data);

struct GwasConfig
{
  std::size_t                  n_clients    = 2;
  unsigned                     merkle_depth = 0;  // 0 picks the smallest that fits
  std::optional<std::uint64_t> seed;
};

struct GwasRun
{
  std::vector<SnpStats>                   stats;
  std::vector<std::vector<std::uint64_t>> released;  // per SNP
  unsigned                                merkle_depth = 0;
  std::vector<std::size_t>                rows_per_client;
  ledger::Ledger                          ledger;
  std::vector<protocol::PhaseTiming>      timings;
};

/// Rows are split into contiguous blocks, one per client. Each SNP is one
/// query; every record is one proven submission against the client's
/// committed data tree.
GwasRun run_gwas(Dataset const &data, GwasConfig const &config);

std::string report_json(std::vector<SnpStats> const &stats);

}  // namespace vpas::gwas
