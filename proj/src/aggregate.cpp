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

#include "vpas/aggregate.hpp"
#include "vpas/error.hpp"

namespace vpas::aggregate {

Ciphertext agg(std::span<Ciphertext const> cts)
{
  if (cts.empty())
  {
    throw Error(ErrorCode::kInvalidArgument, "agg: no ciphertexts");
  }
  Ciphertext out = cts.front();
  for (std::size_t j = 1; j < cts.size(); ++j)
  {
    auto const &ct = cts[j];
    if (ct.n_chunks() != out.n_chunks())
    {
      throw Error(ErrorCode::kShapeMismatch, "agg: chunk counts differ", j);
    }
    out.c0 += ct.c0;
    for (std::size_t i = 0; i < ct.n_chunks(); ++i)
    {
      out.chunks[i] += ct.chunks[i];
    }
    out.psi += ct.psi;
  }
  return out;
}

Bytes AggregationRecord::serialize() const
{
  ByteWriter w;
  w.put_u64(input_digests.size());
  for (auto const &d : input_digests)
  {
    w.put_raw(d);
  }
  result.serialize(w);
  return std::move(w).take();
}

AggregationRecord AggregationRecord::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader        r(bytes);
  AggregationRecord rec;
  auto              n = r.get_count(32);
  for (std::size_t i = 0; i < n; ++i)
  {
    Digest d{};
    auto   raw = r.get_raw(32);
    std::copy(raw.begin(), raw.end(), d.begin());
    rec.input_digests.push_back(d);
  }
  rec.result = Ciphertext::deserialize(r.get_raw(bytes.size() - 8 - 32 * n));
  return rec;
}

AggregationRecord make_record(std::span<Ciphertext const> cts)
{
  AggregationRecord rec;
  for (auto const &ct : cts)
  {
    rec.input_digests.push_back(ct.digest());
  }
  rec.result = agg(cts);
  return rec;
}

bool verify_agg(AggregationRecord const &record, std::span<Ciphertext const> cts)
{
  if (cts.empty() || record.input_digests.size() != cts.size())
  {
    return false;
  }
  for (std::size_t i = 0; i < cts.size(); ++i)
  {
    if (record.input_digests[i] != cts[i].digest())
    {
      return false;
    }
  }
  try
  {
    return agg(cts) == record.result;
  }
  catch (Error const &)
  {
    return false;
  }
}

}  // namespace vpas::aggregate
