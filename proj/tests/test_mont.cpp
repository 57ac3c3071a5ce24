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

#include "support.hpp"

#include "vpas/mont.hpp"

using namespace vpas;
using namespace vpas::mont;
using vpas::test::cpp_int;
using vpas::test::from_int;
using vpas::test::modulus;
using vpas::test::pow_mod;
using vpas::test::to_int;

namespace {

cpp_int mod(cpp_int v)
{
  v %= modulus();
  return v < 0 ? v + modulus() : v;
}

cpp_int inv(cpp_int const &v)
{
  return pow_mod(mod(v), modulus() - 2);
}

struct IntPoint
{
  cpp_int x, y;
};

IntPoint as_int(MontPoint const &p)
{
  return {to_int(p.x), to_int(p.y)};
}

// Affine chord and tangent formulas for B y^2 = x^3 + A x^2 + x.
IntPoint oracle_add(IntPoint const &p, IntPoint const &q, cpp_int const &a, cpp_int const &b)
{
  cpp_int l  = mod((q.y - p.y) * inv(q.x - p.x));
  cpp_int x3 = mod(b * l * l - a - p.x - q.x);
  return {x3, mod(l * (p.x - x3) - p.y)};
}

IntPoint oracle_double(IntPoint const &p, cpp_int const &a, cpp_int const &b)
{
  cpp_int l  = mod((3 * p.x * p.x + 2 * a * p.x + 1) * inv(2 * b * p.y));
  cpp_int x3 = mod(b * l * l - a - 2 * p.x);
  return {x3, mod(l * (p.x - x3) - p.y)};
}

BigInt big(std::uint64_t v)
{
  return BigInt(v);
}

}  // namespace

TEST_SUITE("mont")
{
  TEST_CASE("jubjub parameters")
  {
    auto const &c = MontCurve::jubjub();
    CHECK(to_int(c.a) == 40962);
    CHECK(to_int(c.b) == modulus() - 40964);
    CHECK(c.order == big_from_hex("0e7db4ea6533afa906673b0101343b00a6682093ccc81082d0970e5ed6f72cb7"));
    CHECK(c.cofactor == 8);
    CHECK(c.scalar_bits() == 252);

    // on_curve against the curve equation evaluated with big integers
    auto g = as_int(c.generator);
    CHECK(mod(to_int(c.b) * g.y * g.y) == mod(g.x * g.x * g.x + 40962 * g.x * g.x + g.x));
    CHECK(c.on_curve(c.generator));
    CHECK(double_and_add_reference(c, c.order, c.generator).infinity);
    CHECK_FALSE(double_and_add_reference(c, c.order - 1, c.generator).infinity);
  }

  TEST_CASE("chord and tangent agree with the big-integer formulas")
  {
    auto const &c   = MontCurve::jubjub();
    Rng         rng = Rng::seeded(51);
    cpp_int     a = to_int(c.a), b = to_int(c.b);
    for (int i = 0; i < 25; ++i)
    {
      auto p = c.random_point(rng), q = c.random_point(rng);
      auto s = as_int(mont_add(c, p, q));
      auto o = oracle_add(as_int(p), as_int(q), a, b);
      CHECK(s.x == o.x);
      CHECK(s.y == o.y);
      auto d  = as_int(mont_double(c, p));
      auto od = oracle_double(as_int(p), a, b);
      CHECK(d.x == od.x);
      CHECK(d.y == od.y);
      CHECK(c.on_curve(mont_add(c, p, q)));
      CHECK(group_add(c, p, q) == mont_add(c, p, q));
      CHECK(group_add(c, p, p) == mont_double(c, p));
      CHECK(group_add(c, p, -p).infinity);
    }
  }

  TEST_CASE("degenerate inputs")
  {
    auto const &c   = MontCurve::jubjub();
    Rng         rng = Rng::seeded(52);
    auto        p   = c.random_point(rng);
    CHECK_ERROR(mont_add(c, p, p), ErrorCode::kDegenerate);
    CHECK_ERROR(mont_add(c, p, -p), ErrorCode::kDegenerate);
    CHECK_ERROR(mont_add(c, p, MontPoint::at_infinity()), ErrorCode::kDegenerate);
    CHECK_ERROR(mont_double(c, MontPoint{algebra::Scalar{}, algebra::Scalar{}, false}),
                ErrorCode::kDegenerate);
    CHECK_ERROR(identity_decompose(c, MontPoint{algebra::Scalar{}, p.y, false}),
                ErrorCode::kDegenerate);
    CHECK_ERROR(identity_decompose(c, MontPoint{-c.a, p.y, false}), ErrorCode::kDegenerate);
  }

  TEST_CASE("identity decomposition round-trips 100 random points")
  {
    auto const &c   = MontCurve::jubjub();
    Rng         rng = Rng::seeded(53);
    for (int i = 0; i < 100; ++i)
    {
      auto r      = c.random_point(rng);
      auto [p, q] = identity_decompose(c, r);
      CHECK(p.x == -r.x - c.a);
      CHECK(p.y == -r.y);
      CHECK(q.x == algebra::Scalar{});
      CHECK(q.y == -r.y);
      CHECK(mont_add(c, p, q) == r);
    }
  }

  TEST_CASE("reference ladder equals repeated addition for small k")
  {
    auto const &c   = MontCurve::jubjub();
    Rng         rng = Rng::seeded(54);
    auto        p   = c.random_point(rng);
    MontPoint   acc = MontPoint::at_infinity();
    for (std::uint64_t k = 0; k <= 40; ++k)
    {
      CHECK(double_and_add_reference(c, big(k), p) == acc);
      acc = group_add(c, acc, p);
    }
  }

  TEST_CASE("condition-free walk equals the reference on structured scalars")
  {
    auto const &c   = MontCurve::jubjub();
    Rng         rng = Rng::seeded(55);
    auto        p   = c.random_point(rng);
    std::vector<BigInt> ks{big(1), big(2), big(3), c.order - 1, c.order - 2};
    for (unsigned j = 2; j < c.scalar_bits(); j += 7)
    {
      ks.push_back(BigInt(1) << j);
    }
    for (auto const &k : ks)
    {
      CHECK(double_and_add_condition_free(c, k, p) == double_and_add_reference(c, k, p));
    }
  }

  TEST_CASE("condition-free walk and fixed-base table on random scalars")
  {
    auto const &c     = MontCurve::jubjub();
    Rng         rng   = Rng::seeded(56);
    auto        table = DoublesTable::build(c, c.generator);
    CHECK(table.doubles.size() == c.scalar_bits());
    for (int i = 0; i < 50; ++i)
    {
      auto k   = c.random_scalar(rng);
      auto ref = double_and_add_reference(c, k, c.generator);
      CHECK(double_and_add_condition_free(c, k, c.generator) == ref);
      CHECK(fixed_base_mul(c, k, table) == ref);
    }
    CHECK_ERROR(fixed_base_mul(c, BigInt(1) << c.scalar_bits(), table), ErrorCode::kInvalidArgument);
  }
}
