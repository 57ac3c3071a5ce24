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

// Groth16 over BLS12-381. Setup is a single local trusted party whose toxic
// scalars never leave `setup`.

#include "vpas/algebra.hpp"
#include "vpas/r1cs.hpp"

#include <memory>
#include <vector>

namespace vpas::snark {

using algebra::G1;
using algebra::G2;

struct Proof
{
  static constexpr std::size_t kSize = 2 * G1::kCompressedSize + G2::kCompressedSize;

  G1 a;
  G2 b;
  G1 c;

  Bytes        serialize() const;  // exactly kSize bytes, no envelope
  static Proof deserialize(std::span<std::uint8_t const> bytes);

  friend bool operator==(Proof const &x, Proof const &y)
  {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

struct VerifyingKey
{
  G1              alpha_g1;
  G2              beta_g2;
  G2              gamma_g2;
  G2              delta_g2;
  G1              delta_g1;
  std::vector<G1> ic;  // ic[0] constant base, ic[1..l] public-input bases

  std::size_t num_public() const
  {
    return ic.empty() ? 0 : ic.size() - 1;
  }

  void                serialize(ByteWriter &w) const;
  static VerifyingKey deserialize(ByteReader &r);
};

struct ProvingKey
{
  std::size_t num_public  = 0;
  std::size_t num_witness = 0;
  std::size_t domain_size = 0;

  G1               alpha_g1;
  G1               beta_g1;
  G2               beta_g2;
  G1               delta_g1;
  G2               delta_g2;
  algebra::G1Bases a_query;  // one per variable
  algebra::G1Bases b_g1_query;
  algebra::G2Bases b_g2_query;
  algebra::G1Bases l_query;  // witness variables only
  algebra::G1Bases h_query;  // domain_size - 1 entries
};

struct Crs
{
  std::shared_ptr<ProvingKey const> pk;
  VerifyingKey                      vk;
};

/// Evaluations of the system's constraint count plus input-consistency rows
/// need a radix-2 domain; returns its size.
std::size_t domain_size_for(ConstraintSystem const &cs);

/// Extra setup outputs that depend on toxic scalars.
struct SetupExtras
{
  G1 neg_gamma_g1;  // G^{-gamma}
};

Crs setup(ConstraintSystem const &shape, Rng &rng, SetupExtras *extras = nullptr);

/// `cs` must carry a satisfying assignment and have the shape used at setup.
/// Throws Error(kUnsatisfied) naming the first failing constraint.
Proof prove(ProvingKey const &pk, ConstraintSystem const &cs, Rng &rng);

/// Groth16 pairing check for `public_inputs` (excluding the leading one).
bool verify(VerifyingKey const &vk, std::span<Scalar const> public_inputs, Proof const &proof);

// Radix-2 transforms over the size-|values| subgroup, exposed for tests.
// `values.size()` must be a power of two.
void fft(std::vector<Scalar> &values);   // coefficients -> evaluations
void ifft(std::vector<Scalar> &values);  // evaluations -> coefficients

}  // namespace vpas::snark
