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

#include "vpas/mont.hpp"
#include "vpas/error.hpp"

namespace vpas::mont {
namespace {

std::string step_msg(char const *what, std::size_t step)
{
  return std::string(what) + " at step " + std::to_string(step);
}

// Addition inside the walk. Landing exactly on the identity (R = -P_i) is
// representable and only happens at the last set bit of k = -1 mod order;
// every other equal-x case is degenerate.
MontPoint walk_add(MontCurve const &c, MontPoint const &r, MontPoint const &p, std::size_t step)
{
  if (r.infinity || p.infinity)
  {
    throw Error(ErrorCode::kDegenerate, step_msg("addition with the point at infinity", step),
                step);
  }
  if (r.x == p.x)
  {
    if (r.y == -p.y && !r.y.is_zero())
    {
      return MontPoint::at_infinity();
    }
    throw Error(ErrorCode::kDegenerate, step_msg("equal-x addition", step), step);
  }
  return mont_add(c, r, p);
}

MontPoint walk_keep(MontCurve const &c, MontPoint const &r, std::size_t step)
{
  if (r.infinity)
  {
    throw Error(ErrorCode::kDegenerate, step_msg("decomposition of the point at infinity", step),
                step);
  }
  try
  {
    auto [p, q] = identity_decompose(c, r);
    return mont_add(c, p, q);
  }
  catch (Error const &)
  {
    throw Error(ErrorCode::kDegenerate, step_msg("degenerate decomposition", step), step);
  }
}

// Shared walk; `double_at(i)` yields 2^i * P.
template <typename Doubles>
MontPoint walk(MontCurve const &c, BigInt const &k, Doubles &&double_at)
{
  if (k == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "condition-free walk needs k > 0");
  }
  unsigned const bits      = static_cast<unsigned>(boost::multiprecision::msb(k)) + 1;
  bool const     first_bit = boost::multiprecision::bit_test(k, 0);

  // bit 0: R <- P either as the real first term or as an offset removed below
  MontPoint r = double_at(0);
  for (unsigned i = 1; i < bits; ++i)
  {
    bool const      bit = boost::multiprecision::bit_test(k, i);
    MontPoint const pi  = double_at(i);
    r = bit ? walk_add(c, r, pi, i) : walk_keep(c, r, i);
  }
  if (!first_bit)
  {
    MontPoint const p = double_at(0);
    r = r.infinity ? -p : walk_add(c, r, -p, bits);
  }
  return r;
}

}  // namespace

BigInt big_from_hex(std::string const &hex)
{
  return BigInt("0x" + hex);
}

MontCurve const &MontCurve::jubjub()
{
  static MontCurve const curve = [] {
    MontCurve c;
    c.a        = Scalar::from_u64(40962);
    c.b        = -Scalar::from_u64(40964);
    c.order    = big_from_hex("0e7db4ea6533afa906673b0101343b00a6682093ccc81082d0970e5ed6f72cb7");
    c.cofactor = 8;
    // first x with a valid lift whose cofactor-cleared multiple is nontrivial
    for (std::uint64_t x = 1;; ++x)
    {
      auto p = c.lift_x(Scalar::from_u64(x));
      if (!p)
      {
        continue;
      }
      MontPoint g = double_and_add_reference(c, c.cofactor, *p);
      if (!g.infinity)
      {
        c.generator = g;
        break;
      }
    }
    return c;
  }();
  return curve;
}

bool MontCurve::on_curve(MontPoint const &p) const
{
  if (p.infinity)
  {
    return true;
  }
  Scalar x2 = p.x.square();
  return b * p.y.square() == x2 * p.x + a * x2 + p.x;
}

std::optional<MontPoint> MontCurve::lift_x(Scalar const &x) const
{
  Scalar x2  = x.square();
  Scalar rhs = (x2 * x + a * x2 + x) * b.inverse();
  auto   y   = rhs.sqrt();
  if (!y)
  {
    return std::nullopt;
  }
  return MontPoint{x, *y, false};
}

BigInt MontCurve::random_scalar(Rng &rng) const
{
  for (;;)
  {
    std::array<std::uint8_t, 32> raw{};
    rng.fill(raw);
    BigInt k;
    boost::multiprecision::import_bits(k, raw.begin(), raw.end());
    k %= order;
    if (k != 0)
    {
      return k;
    }
  }
}

MontPoint MontCurve::random_point(Rng &rng) const
{
  return double_and_add_reference(*this, random_scalar(rng), generator);
}

unsigned MontCurve::scalar_bits() const
{
  return static_cast<unsigned>(boost::multiprecision::msb(order)) + 1;
}

MontPoint mont_add(MontCurve const &c, MontPoint const &p, MontPoint const &q)
{
  if (p.infinity || q.infinity)
  {
    throw Error(ErrorCode::kDegenerate, "mont_add: point at infinity");
  }
  if (p.x == q.x)
  {
    throw Error(ErrorCode::kDegenerate, "mont_add: equal x coordinates");
  }
  Scalar lambda = (q.y - p.y) * (q.x - p.x).inverse();
  Scalar x3     = c.b * lambda.square() - c.a - p.x - q.x;
  Scalar y3     = lambda * (p.x - x3) - p.y;
  return {x3, y3, false};
}

MontPoint mont_double(MontCurve const &c, MontPoint const &p)
{
  if (p.infinity || p.y.is_zero())
  {
    throw Error(ErrorCode::kDegenerate, "mont_double: y = 0");
  }
  Scalar const three = Scalar::from_u64(3);
  Scalar const two   = Scalar::from_u64(2);
  Scalar lambda = (three * p.x.square() + two * c.a * p.x + Scalar::one()) * (two * c.b * p.y).inverse();
  Scalar x3     = c.b * lambda.square() - c.a - two * p.x;
  Scalar y3     = lambda * (p.x - x3) - p.y;
  return {x3, y3, false};
}

MontPoint group_add(MontCurve const &c, MontPoint const &p, MontPoint const &q)
{
  if (p.infinity)
  {
    return q;
  }
  if (q.infinity)
  {
    return p;
  }
  if (p.x == q.x)
  {
    if (p.y == q.y && !p.y.is_zero())
    {
      return mont_double(c, p);
    }
    return MontPoint::at_infinity();
  }
  return mont_add(c, p, q);
}

std::pair<MontPoint, MontPoint> identity_decompose(MontCurve const &c, MontPoint const &r)
{
  if (r.infinity || r.x.is_zero() || r.x == -c.a)
  {
    throw Error(ErrorCode::kDegenerate, "identity_decompose: x is 0 or -A");
  }
  return {MontPoint{-r.x - c.a, -r.y, false}, MontPoint{Scalar{}, -r.y, false}};
}

MontPoint double_and_add_reference(MontCurve const &c, BigInt const &k, MontPoint const &p)
{
  MontPoint r = MontPoint::at_infinity();
  MontPoint d = p;
  BigInt    e = k;
  while (e > 0)
  {
    if (boost::multiprecision::bit_test(e, 0))
    {
      r = group_add(c, r, d);
    }
    d = group_add(c, d, d);
    e >>= 1;
  }
  return r;
}

MontPoint double_and_add_condition_free(MontCurve const &c, BigInt const &k, MontPoint const &p)
{
  MontPoint d     = p;
  unsigned  level = 0;
  return walk(c, k, [&](unsigned i) {
    // doubles are requested in increasing order, plus index 0 again at the end
    if (i == 0)
    {
      return p;
    }
    while (level < i)
    {
      d = mont_double(c, d);
      ++level;
    }
    return d;
  });
}

DoublesTable DoublesTable::build(MontCurve const &c, MontPoint const &base)
{
  DoublesTable t;
  MontPoint    d = base;
  for (unsigned i = 0; i < c.scalar_bits(); ++i)
  {
    t.doubles.push_back(d);
    d = group_add(c, d, d);
  }
  return t;
}

MontPoint fixed_base_mul(MontCurve const &c, BigInt const &k, DoublesTable const &table)
{
  if (k == 0 || boost::multiprecision::msb(k) >= table.doubles.size())
  {
    throw Error(ErrorCode::kInvalidArgument, "fixed_base_mul: scalar outside the table range");
  }
  return walk(c, k, [&](unsigned i) { return table.doubles[i]; });
}

}  // namespace vpas::mont
