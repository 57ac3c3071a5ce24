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

// Synthetic genotype cohorts and a from-scratch statistics oracle that
// counts records directly and evaluates the allele formulas by hand.

#include "vpas/gwas.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace vpas::test {

inline gwas::Dataset make_cohort(Rng &rng, std::size_t samples, std::size_t snps)
{
  gwas::Dataset d;
  for (std::size_t k = 0; k < snps; ++k)
  {
    d.snp_names.push_back("rs" + std::to_string(1000 + k));
  }
  for (std::size_t i = 0; i < samples; ++i)
  {
    gwas::SnpRecord r;
    r.sample_id = "s" + std::to_string(i);
    // alternate populations first so both are non-empty, then draw
    r.is_case = i < 2 ? i == 0 : rng.uniform(2) == 0;
    for (std::size_t k = 0; k < snps; ++k)
    {
      r.genotypes.push_back(static_cast<gwas::Genotype>(rng.uniform(3)));
    }
    d.records.push_back(std::move(r));
  }
  return d;
}

struct OracleStats
{
  std::uint64_t                         counts[2][3] = {};  // [case, control][AA, Aa, aa]
  std::optional<gwas::Rational>         maf_case, maf_control, chi2;
};

inline OracleStats oracle_stats(gwas::Dataset const &d, std::size_t snp)
{
  using gwas::Rational;
  OracleStats o;
  for (auto const &r : d.records)
  {
    o.counts[r.is_case ? 0 : 1][static_cast<int>(r.genotypes[snp])] += 1;
  }
  auto alleles = [&](int pop) {
    auto const *c = o.counts[pop];
    return std::pair<std::int64_t, std::int64_t>(2 * c[0] + c[1], 2 * c[2] + c[1]);
  };
  auto maf = [&](int pop) -> std::optional<Rational> {
    auto [a, b] = alleles(pop);
    if (a + b == 0)
    {
      return std::nullopt;
    }
    return Rational(std::min(a, b), a + b);
  };
  o.maf_case    = maf(0);
  o.maf_control = maf(1);
  auto [ca, cb] = alleles(0);
  auto [ka, kb] = alleles(1);
  if (ka > 0 && kb > 0)
  {
    o.chi2 = Rational((ca - ka) * (ca - ka), ka) + Rational((cb - kb) * (cb - kb), kb);
  }
  return o;
}

inline bool matches_oracle(gwas::SnpStats const &s, OracleStats const &o)
{
  auto const &cc = s.counts.case_counts;
  auto const &kc = s.counts.control_counts;
  return cc.n_AA == o.counts[0][0] && cc.n_Aa == o.counts[0][1] && cc.n_aa == o.counts[0][2] &&
         kc.n_AA == o.counts[1][0] && kc.n_Aa == o.counts[1][1] && kc.n_aa == o.counts[1][2] &&
         cc.consistent() && kc.consistent() && s.maf_case == o.maf_case &&
         s.maf_control == o.maf_control && s.chi2 == o.chi2;
}

}  // namespace vpas::test
