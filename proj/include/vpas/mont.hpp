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

// Montgomery-curve arithmetic B*y^2 = x^3 + A*x^2 + x over the SNARK scalar
// field, with the identity-free addition trick and the condition-free
// double-and-add walk used by in-circuit encryption.

#include "vpas/algebra.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vpas::mont {

using algebra::Scalar;
using BigInt = boost::multiprecision::uint256_t;

struct MontPoint
{
  Scalar x;
  Scalar y;
  bool   infinity = false;

  static MontPoint at_infinity()
  {
    return {{}, {}, true};
  }

  MontPoint operator-() const
  {
    return infinity ? *this : MontPoint{x, -y, false};
  }

  friend bool operator==(MontPoint const &p, MontPoint const &q)
  {
    return p.infinity == q.infinity && (p.infinity || (p.x == q.x && p.y == q.y));
  }
};

struct MontCurve
{
  Scalar    a;
  Scalar    b;
  BigInt    order;     // prime subgroup order
  unsigned  cofactor;  // curve order = cofactor * order
  MontPoint generator; // generates the prime subgroup

  /// Jubjub in Montgomery form: A = 40962, B = -40964.
  static MontCurve const &jubjub();

  bool on_curve(MontPoint const &p) const;
  /// Some point with the given x, if x^3 + A x^2 + x over B is a square.
  std::optional<MontPoint> lift_x(Scalar const &x) const;
  MontPoint                random_point(Rng &rng) const;  // in the prime subgroup
  BigInt                   random_scalar(Rng &rng) const; // in [1, order)
  unsigned                 scalar_bits() const;           // bit width of order
};

/// Chord addition. Throws Error(kDegenerate) when x1 == x2 or an input is at
/// infinity. Inputs need not lie on the curve.
MontPoint mont_add(MontCurve const &c, MontPoint const &p, MontPoint const &q);

/// Tangent doubling; Error(kDegenerate) when y == 0.
MontPoint mont_double(MontCurve const &c, MontPoint const &p);

/// Full group law with the point at infinity, used by the reference ladder.
MontPoint group_add(MontCurve const &c, MontPoint const &p, MontPoint const &q);

/// (P, Q) = ((-x - A, -y), (0, -y)) with mont_add(P, Q) = R.
/// Error(kDegenerate) for x == 0 or x == -A.
std::pair<MontPoint, MontPoint> identity_decompose(MontCurve const &c, MontPoint const &r);

/// Textbook LSB-first double-and-add with the full group law. k = 0 gives
/// the point at infinity.
MontPoint double_and_add_reference(MontCurve const &c, BigInt const &k, MontPoint const &p);

/// Condition-free walk: R starts at P, each later bit either adds the current
/// double or re-derives R through identity_decompose, and an even k removes
/// the initial P at the end. Error(kDegenerate, step) on a degenerate step.
MontPoint double_and_add_condition_free(MontCurve const &c, BigInt const &k, MontPoint const &p);

/// Doubles P, 2P, 4P, ... of a fixed base, one per scalar bit.
struct DoublesTable
{
  std::vector<MontPoint> doubles;

  static DoublesTable build(MontCurve const &c, MontPoint const &base);
};

/// Same walk as the condition-free variant, reading doubles from the table.
/// Error(kInvalidArgument) for k >= 2^table length.
MontPoint fixed_base_mul(MontCurve const &c, BigInt const &k, DoublesTable const &table);

BigInt big_from_hex(std::string const &hex);

}  // namespace vpas::mont
