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

// Shared helpers for the unit tests.

#include "vpas/algebra.hpp"
#include "vpas/error.hpp"
#include "vpas/protocol.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <cstdint>
#include <vector>

namespace vpas::test {

using boost::multiprecision::cpp_int;

// BLS12-381 scalar field modulus, written out independently of the library.
inline cpp_int const &modulus()
{
  static cpp_int const p(
      "0x73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
  return p;
}

inline cpp_int to_int(algebra::Scalar const &s)
{
  auto    le = s.to_bytes();
  cpp_int v  = 0;
  for (auto it = le.rbegin(); it != le.rend(); ++it)
  {
    v = (v << 8) | *it;
  }
  return v;
}

inline algebra::Scalar from_int(cpp_int v)
{
  v %= modulus();
  if (v < 0)
  {
    v += modulus();
  }
  std::array<std::uint8_t, 32> le{};
  for (auto &b : le)
  {
    b = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return algebra::Scalar::from_bytes(le);
}

inline cpp_int pow_mod(cpp_int base, cpp_int e)
{
  cpp_int r = 1;
  base %= modulus();
  while (e > 0)
  {
    if ((e & 1) != 0)
    {
      r = r * base % modulus();
    }
    base = base * base % modulus();
    e >>= 1;
  }
  return r;
}

// Runs `f` and reports the ErrorCode it threw, if any.
template <typename F>
std::optional<ErrorCode> error_of(F &&f)
{
  try
  {
    f();
  }
  catch (Error const &e)
  {
    return e.code();
  }
  return std::nullopt;
}

template <typename F>
std::optional<std::size_t> error_index_of(F &&f)
{
  try
  {
    f();
  }
  catch (Error const &e)
  {
    return e.index();
  }
  return std::nullopt;
}

#define CHECK_ERROR(expr, code) CHECK(::vpas::test::error_of([&] { (void)(expr); }) == (code))

inline std::vector<std::uint64_t> chunkwise_sums(std::vector<std::vector<std::uint64_t>> const &in)
{
  std::vector<std::uint64_t> out(in.empty() ? 0 : in[0].size(), 0);
  for (auto const &row : in)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      out[i] += row[i];
    }
  }
  return out;
}

// A complete honest run; returns the inputs so callers can form the oracle.
struct HonestRun
{
  std::vector<std::vector<std::uint64_t>> inputs;
  std::vector<std::uint64_t>              released;
};

inline HonestRun run_honest(protocol::Simulation &sim, std::uint64_t input_seed)
{
  HonestRun r;
  sim.run_setup();
  sim.post_query();
  Rng rng  = Rng::seeded(input_seed);
  r.inputs = sim.synthetic_inputs(rng);
  sim.run_submit(r.inputs);
  sim.run_aggregate();
  r.released = sim.run_release();
  return r;
}

}  // namespace vpas::test
