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

#include "vpas/algebra.hpp"
#include "vpas/error.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>

namespace vpas::algebra {
namespace {

// (p - 1) / 2^32, little-endian.
constexpr std::array<std::uint8_t, 32> kOddPartLe = {
    0xff, 0xff, 0xff, 0xff, 0xfe, 0x5b, 0xfe, 0xff, 0x02, 0xa4, 0xbd, 0x53, 0x05, 0xd8, 0xa1, 0x09,
    0x08, 0xd8, 0x39, 0x33, 0x48, 0x7d, 0x9d, 0x29, 0x53, 0xa7, 0xed, 0x73, 0x00, 0x00, 0x00, 0x00};

std::array<std::uint8_t, 32> shift_right_one(std::array<std::uint8_t, 32> v)
{
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    v[i] = static_cast<std::uint8_t>(v[i] >> 1);
    if (i + 1 < v.size())
    {
      v[i] = static_cast<std::uint8_t>(v[i] | (v[i + 1] << 7));
    }
  }
  return v;
}

std::array<std::uint8_t, 32> add_one(std::array<std::uint8_t, 32> v)
{
  for (auto &b : v)
  {
    if (++b != 0)
    {
      break;
    }
  }
  return v;
}

std::uint64_t point_key(blst_fp const &x, blst_fp const &y)
{
  return x.l[0] ^ (y.l[1] * 0x9e3779b97f4a7c15ULL);
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar Scalar::one()
{
  return from_u64(1);
}

Scalar Scalar::from_u64(std::uint64_t v)
{
  std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar        s;
  blst_fr_from_uint64(&s.v_, limbs);
  return s;
}

Scalar Scalar::from_i64(std::int64_t v)
{
  if (v >= 0)
  {
    return from_u64(static_cast<std::uint64_t>(v));
  }
  return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

Scalar Scalar::random(Rng &rng)
{
  std::array<std::uint8_t, 64> wide{};
  rng.fill(wide);
  return from_be_bytes_reduce(wide);
}

Scalar Scalar::random_nonzero(Rng &rng)
{
  for (;;)
  {
    auto s = random(rng);
    if (!s.is_zero())
    {
      return s;
    }
  }
}

Scalar Scalar::from_bytes(std::span<std::uint8_t const> le)
{
  if (le.size() != kSize)
  {
    throw Error(ErrorCode::kDecode, "scalar encoding must be 32 bytes");
  }
  blst_scalar raw;
  blst_scalar_from_lendian(&raw, le.data());
  if (!blst_scalar_fr_check(&raw))
  {
    throw Error(ErrorCode::kDecode, "scalar encoding is not reduced");
  }
  Scalar s;
  blst_fr_from_scalar(&s.v_, &raw);
  return s;
}

Scalar Scalar::from_be_bytes_reduce(std::span<std::uint8_t const> be)
{
  blst_scalar raw;
  blst_scalar_from_be_bytes(&raw, be.data(), be.size());
  Scalar s;
  blst_fr_from_scalar(&s.v_, &raw);
  return s;
}

std::array<std::uint8_t, Scalar::kSize> Scalar::to_bytes() const
{
  auto                            raw = to_blst();
  std::array<std::uint8_t, kSize> out{};
  blst_lendian_from_scalar(out.data(), &raw);
  return out;
}

blst_scalar Scalar::to_blst() const
{
  blst_scalar raw;
  blst_scalar_from_fr(&raw, &v_);
  return raw;
}

std::optional<std::uint64_t> Scalar::to_u64() const
{
  std::uint64_t limbs[4];
  blst_uint64_from_fr(limbs, &v_);
  if (limbs[1] != 0 || limbs[2] != 0 || limbs[3] != 0)
  {
    return std::nullopt;
  }
  return limbs[0];
}

bool Scalar::is_zero() const
{
  return *this == Scalar{};
}

Scalar Scalar::inverse() const
{
  if (is_zero())
  {
    throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  }
  Scalar out;
  blst_fr_inverse(&out.v_, &v_);
  return out;
}

Scalar Scalar::square() const
{
  Scalar out;
  blst_fr_sqr(&out.v_, &v_);
  return out;
}

Scalar Scalar::pow(std::uint64_t e) const
{
  Scalar acc  = one();
  Scalar base = *this;
  while (e != 0)
  {
    if (e & 1)
    {
      acc *= base;
    }
    base = base.square();
    e >>= 1;
  }
  return acc;
}

Scalar Scalar::pow(std::span<std::uint8_t const> le_exponent) const
{
  Scalar acc = one();
  for (std::size_t i = le_exponent.size(); i-- > 0;)
  {
    for (int bit = 7; bit >= 0; --bit)
    {
      acc = acc.square();
      if ((le_exponent[i] >> bit) & 1)
      {
        acc *= *this;
      }
    }
  }
  return acc;
}

std::optional<Scalar> Scalar::sqrt() const
{
  // Tonelli-Shanks with p - 1 = 2^32 * q.
  if (is_zero())
  {
    return Scalar{};
  }
  auto   half_q1 = shift_right_one(add_one(kOddPartLe));  // (q + 1) / 2
  Scalar c       = multiplicative_generator().pow(kOddPartLe);
  Scalar t       = pow(kOddPartLe);
  Scalar x       = pow(half_q1);
  unsigned m     = kTwoAdicity;
  while (!(t == one()))
  {
    unsigned i  = 0;
    Scalar   tt = t;
    while (!(tt == one()))
    {
      tt = tt.square();
      if (++i == m)
      {
        return std::nullopt;
      }
    }
    Scalar b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j)
    {
      b = b.square();
    }
    m = i;
    c = b.square();
    t *= c;
    x *= b;
  }
  return x;
}

Scalar operator+(Scalar const &a, Scalar const &b)
{
  Scalar out;
  blst_fr_add(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar operator-(Scalar const &a, Scalar const &b)
{
  Scalar out;
  blst_fr_sub(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar operator*(Scalar const &a, Scalar const &b)
{
  Scalar out;
  blst_fr_mul(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar Scalar::operator-() const
{
  Scalar out;
  blst_fr_cneg(&out.v_, &v_, true);
  return out;
}

bool operator==(Scalar const &a, Scalar const &b)
{
  return std::memcmp(&a.v_, &b.v_, sizeof(a.v_)) == 0;
}

Scalar multiplicative_generator()
{
  return Scalar::from_u64(7);
}

Scalar root_of_unity(unsigned log_size)
{
  if (log_size > kTwoAdicity)
  {
    throw Error(ErrorCode::kInvalidArgument, "domain larger than 2^32");
  }
  Scalar w = multiplicative_generator().pow(kOddPartLe);
  for (unsigned i = log_size; i < kTwoAdicity; ++i)
  {
    w = w.square();
  }
  return w;
}

// ---------------------------------------------------------------- G1

G1 G1::generator()
{
  G1 g;
  g.p_ = *blst_p1_generator();
  return g;
}

G1 G1::random(Rng &rng)
{
  return generator() * Scalar::random(rng);
}

G1 G1::decompress(std::span<std::uint8_t const> bytes)
{
  if (bytes.size() != kCompressedSize)
  {
    throw Error(ErrorCode::kDecode, "G1 encoding must be 48 bytes");
  }
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, bytes.data()) != BLST_SUCCESS)
  {
    throw Error(ErrorCode::kDecode, "G1 encoding is not a curve point");
  }
  if (!blst_p1_affine_in_g1(&a))
  {
    throw Error(ErrorCode::kDecode, "G1 point outside the prime-order subgroup");
  }
  return from_affine(a);
}

G1::Compressed G1::compress() const
{
  Compressed out{};
  blst_p1_compress(out.data(), &p_);
  return out;
}

bool G1::is_identity() const
{
  return blst_p1_is_inf(&p_);
}

blst_p1_affine G1::to_affine() const
{
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p_);
  return a;
}

G1 G1::from_affine(blst_p1_affine const &a)
{
  G1 g;
  blst_p1_from_affine(&g.p_, &a);
  return g;
}

G1 operator+(G1 const &a, G1 const &b)
{
  G1 out;
  blst_p1_add_or_double(&out.p_, &a.p_, &b.p_);
  return out;
}

G1 G1::operator-() const
{
  G1 out = *this;
  blst_p1_cneg(&out.p_, true);
  return out;
}

G1 operator-(G1 const &a, G1 const &b)
{
  return a + (-b);
}

G1 operator*(G1 const &p, Scalar const &k)
{
  auto raw = k.to_blst();
  G1   out;
  blst_p1_mult(&out.p_, &p.p_, raw.b, 255);
  return out;
}

bool operator==(G1 const &a, G1 const &b)
{
  return blst_p1_is_equal(&a.p_, &b.p_);
}

// ---------------------------------------------------------------- G2

G2 G2::generator()
{
  G2 g;
  g.p_ = *blst_p2_generator();
  return g;
}

G2 G2::random(Rng &rng)
{
  return generator() * Scalar::random(rng);
}

G2 G2::decompress(std::span<std::uint8_t const> bytes)
{
  if (bytes.size() != kCompressedSize)
  {
    throw Error(ErrorCode::kDecode, "G2 encoding must be 96 bytes");
  }
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, bytes.data()) != BLST_SUCCESS)
  {
    throw Error(ErrorCode::kDecode, "G2 encoding is not a curve point");
  }
  if (!blst_p2_affine_in_g2(&a))
  {
    throw Error(ErrorCode::kDecode, "G2 point outside the prime-order subgroup");
  }
  return from_affine(a);
}

G2 G2::from_affine(blst_p2_affine const &a)
{
  G2 g;
  blst_p2_from_affine(&g.p_, &a);
  return g;
}

G2::Compressed G2::compress() const
{
  Compressed out{};
  blst_p2_compress(out.data(), &p_);
  return out;
}

bool G2::is_identity() const
{
  return blst_p2_is_inf(&p_);
}

blst_p2_affine G2::to_affine() const
{
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p_);
  return a;
}

G2 operator+(G2 const &a, G2 const &b)
{
  G2 out;
  blst_p2_add_or_double(&out.p_, &a.p_, &b.p_);
  return out;
}

G2 G2::operator-() const
{
  G2 out = *this;
  blst_p2_cneg(&out.p_, true);
  return out;
}

G2 operator-(G2 const &a, G2 const &b)
{
  return a + (-b);
}

G2 operator*(G2 const &p, Scalar const &k)
{
  auto raw = k.to_blst();
  G2   out;
  blst_p2_mult(&out.p_, &p.p_, raw.b, 255);
  return out;
}

bool operator==(G2 const &a, G2 const &b)
{
  return blst_p2_is_equal(&a.p_, &b.p_);
}

// ---------------------------------------------------------------- GT

GT::GT()
  : v_(*blst_fp12_one())
{}

namespace {

template <typename F>
void for_each_fp(blst_fp12 &v, F &&f)
{
  for (auto &fp6 : v.fp6)
  {
    for (auto &fp2 : fp6.fp2)
    {
      for (auto &fp : fp2.fp)
      {
        f(fp);
      }
    }
  }
}

}  // namespace

std::array<std::uint8_t, GT::kSize> GT::serialize() const
{
  std::array<std::uint8_t, kSize> out{};
  std::size_t                     pos  = 0;
  blst_fp12                       copy = v_;
  for_each_fp(copy, [&](blst_fp &fp) {
    blst_bendian_from_fp(out.data() + pos, &fp);
    pos += 48;
  });
  return out;
}

GT GT::deserialize(std::span<std::uint8_t const> bytes)
{
  if (bytes.size() != kSize)
  {
    throw Error(ErrorCode::kDecode, "GT encoding must be 576 bytes");
  }
  GT          out;
  std::size_t pos = 0;
  for_each_fp(out.v_, [&](blst_fp &fp) {
    blst_fp_from_bendian(&fp, bytes.data() + pos);
    std::array<std::uint8_t, 48> check{};
    blst_bendian_from_fp(check.data(), &fp);
    if (!std::equal(check.begin(), check.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos)))
    {
      throw Error(ErrorCode::kDecode, "GT coordinate not reduced");
    }
    pos += 48;
  });
  if (!blst_fp12_in_group(&out.v_))
  {
    throw Error(ErrorCode::kDecode, "GT element outside the target group");
  }
  return out;
}

bool GT::is_one() const
{
  return blst_fp12_is_one(&v_);
}

GT GT::pow(Scalar const &k) const
{
  auto bytes = k.to_bytes();
  GT   acc;
  for (std::size_t i = bytes.size(); i-- > 0;)
  {
    for (int bit = 7; bit >= 0; --bit)
    {
      blst_fp12_sqr(&acc.v_, &acc.v_);
      if ((bytes[i] >> bit) & 1)
      {
        blst_fp12_mul(&acc.v_, &acc.v_, &v_);
      }
    }
  }
  return acc;
}

GT operator*(GT const &a, GT const &b)
{
  GT out;
  blst_fp12_mul(&out.v_, &a.v_, &b.v_);
  return out;
}

bool operator==(GT const &a, GT const &b)
{
  return blst_fp12_is_equal(&a.v_, &b.v_);
}

GT pairing(G1 const &a, G2 const &b)
{
  return multi_pairing(std::span<G1 const>(&a, 1), std::span<G2 const>(&b, 1));
}

GT multi_pairing(std::span<G1 const> as, std::span<G2 const> bs)
{
  if (as.size() != bs.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "multi_pairing: length mismatch");
  }
  blst_fp12 acc = *blst_fp12_one();
  for (std::size_t i = 0; i < as.size(); ++i)
  {
    if (as[i].is_identity() || bs[i].is_identity())
    {
      continue;
    }
    auto      pa = as[i].to_affine();
    auto      qa = bs[i].to_affine();
    blst_fp12 ml;
    blst_miller_loop(&ml, &qa, &pa);
    blst_fp12_mul(&acc, &acc, &ml);
  }
  GT out;
  blst_final_exp(&out.v_, &acc);
  return out;
}

// ---------------------------------------------------------------- MSM

namespace {

template <typename Affine, typename Proj, typename MsmFn, typename ScratchFn>
Proj pippenger(std::vector<Affine> const &pts, std::vector<blst_scalar> const &scs, MsmFn msm_fn,
               ScratchFn scratch_fn)
{
  Proj out{};
  if (pts.empty())
  {
    return out;
  }
  Affine const      *point_ptrs[2]  = {pts.data(), nullptr};
  std::uint8_t const *scalar_ptrs[2] = {scs.front().b, nullptr};
  std::vector<limb_t> scratch(scratch_fn(pts.size()) / sizeof(limb_t) + 1);
  msm_fn(&out, point_ptrs, pts.size(), scalar_ptrs, 255, scratch.data());
  return out;
}

bool affine_is_zero(blst_p1_affine const &a)
{
  return blst_p1_affine_is_inf(&a);
}

bool affine_is_zero(blst_p2_affine const &a)
{
  return blst_p2_affine_is_inf(&a);
}

template <typename Affine>
void select_terms(std::span<Affine const> affine, std::span<Scalar const> scalars,
                  std::vector<Affine> &pts, std::vector<blst_scalar> &scs)
{
  pts.reserve(affine.size());
  scs.reserve(affine.size());
  for (std::size_t i = 0; i < affine.size(); ++i)
  {
    if (scalars[i].is_zero() || affine_is_zero(affine[i]))
    {
      continue;
    }
    pts.push_back(affine[i]);
    scs.push_back(scalars[i].to_blst());
  }
}

std::vector<blst_p1_affine> batch_affine(std::span<G1 const> points)
{
  std::vector<blst_p1_affine> out(points.size());
  if (!points.empty())
  {
    static_assert(sizeof(G1) == sizeof(blst_p1));
    blst_p1 const *ptrs[2] = {&points[0].raw(), nullptr};
    blst_p1s_to_affine(out.data(), ptrs, points.size());
  }
  return out;
}

std::vector<blst_p2_affine> batch_affine(std::span<G2 const> points)
{
  std::vector<blst_p2_affine> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    out[i] = points[i].to_affine();
  }
  return out;
}

G1 g1_from_raw(blst_p1 const &p)
{
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p);
  return G1::from_affine(a);
}

}  // namespace

G1Bases::G1Bases(std::span<G1 const> points)
  : affine_(batch_affine(points))
{}

G1 G1Bases::msm(std::span<Scalar const> scalars) const
{
  if (scalars.size() != affine_.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "msm: length mismatch");
  }
  std::vector<blst_p1_affine> pts;
  std::vector<blst_scalar>    scs;
  select_terms<blst_p1_affine>(affine_, scalars, pts, scs);
  auto raw = pippenger<blst_p1_affine, blst_p1>(pts, scs, blst_p1s_mult_pippenger,
                                                blst_p1s_mult_pippenger_scratch_sizeof);
  return g1_from_raw(raw);
}

G2Bases::G2Bases(std::span<G2 const> points)
  : affine_(batch_affine(points))
{}

G2 G2Bases::msm(std::span<Scalar const> scalars) const
{
  if (scalars.size() != affine_.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "msm: length mismatch");
  }
  std::vector<blst_p2_affine> pts;
  std::vector<blst_scalar>    scs;
  select_terms<blst_p2_affine>(affine_, scalars, pts, scs);
  auto raw = pippenger<blst_p2_affine, blst_p2>(pts, scs, blst_p2s_mult_pippenger,
                                                blst_p2s_mult_pippenger_scratch_sizeof);
  blst_p2_affine a;
  blst_p2_to_affine(&a, &raw);
  return G2::from_affine(a);
}

G1 msm(std::span<G1 const> points, std::span<Scalar const> scalars)
{
  if (points.size() != scalars.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "msm: length mismatch");
  }
  return G1Bases(points).msm(scalars);
}

G2 msm(std::span<G2 const> points, std::span<Scalar const> scalars)
{
  if (points.size() != scalars.size())
  {
    throw Error(ErrorCode::kShapeMismatch, "msm: length mismatch");
  }
  return G2Bases(points).msm(scalars);
}

// ---------------------------------------------------------------- fixed base

namespace {

constexpr std::size_t kWindows    = 32;
constexpr std::size_t kWindowSize = 256;

}  // namespace

G1FixedBase::G1FixedBase(G1 const &base)
{
  std::vector<G1> rows;
  rows.reserve(kWindows * kWindowSize);
  G1 window_base = base;
  for (std::size_t w = 0; w < kWindows; ++w)
  {
    G1 acc;
    for (std::size_t i = 0; i < kWindowSize; ++i)
    {
      rows.push_back(acc);
      acc += window_base;
    }
    window_base = acc;  // 256 * window_base
  }
  table_ = batch_affine(rows);
}

G1 G1FixedBase::mul(Scalar const &k) const
{
  auto    bytes = k.to_bytes();
  blst_p1 acc{};
  for (std::size_t w = 0; w < kWindows; ++w)
  {
    if (bytes[w] != 0)
    {
      blst_p1_add_or_double_affine(&acc, &acc, &table_[w * kWindowSize + bytes[w]]);
    }
  }
  return g1_from_raw(acc);
}

std::vector<G1> G1FixedBase::batch_mul(std::span<Scalar const> ks) const
{
  std::vector<G1> out;
  out.reserve(ks.size());
  for (auto const &k : ks)
  {
    out.push_back(mul(k));
  }
  return out;
}

G2FixedBase::G2FixedBase(G2 const &base)
{
  std::vector<G2> rows;
  rows.reserve(kWindows * kWindowSize);
  G2 window_base = base;
  for (std::size_t w = 0; w < kWindows; ++w)
  {
    G2 acc;
    for (std::size_t i = 0; i < kWindowSize; ++i)
    {
      rows.push_back(acc);
      acc += window_base;
    }
    window_base = acc;
  }
  table_ = batch_affine(rows);
}

G2 G2FixedBase::mul(Scalar const &k) const
{
  auto bytes = k.to_bytes();
  G2   acc;
  for (std::size_t w = 0; w < kWindows; ++w)
  {
    if (bytes[w] != 0)
    {
      acc += G2::from_affine(table_[w * kWindowSize + bytes[w]]);
    }
  }
  return acc;
}

std::vector<G2> G2FixedBase::batch_mul(std::span<Scalar const> ks) const
{
  std::vector<G2> out;
  out.reserve(ks.size());
  for (auto const &k : ks)
  {
    out.push_back(mul(k));
  }
  return out;
}

// ---------------------------------------------------------------- hashing

Scalar hash_to_scalar(std::string_view domain_tag, std::span<std::uint8_t const> data)
{
  ByteWriter w;
  w.put_string(domain_tag);
  w.put_raw(data);
  auto digest = sha256(w.bytes());
  return Scalar::from_be_bytes_reduce(digest);
}

// ---------------------------------------------------------------- BSGS

BsgsTable::BsgsTable(G1 const &base, unsigned max_bits)
  : base_(base)
  , max_bits_(max_bits)
{
  if (max_bits == 0 || max_bits > kMaxBits)
  {
    throw Error(ErrorCode::kInvalidArgument, "bsgs: max_bits must be in [1, 40]");
  }
  stride_ = std::uint64_t{1} << ((max_bits + 1) / 2);
  std::vector<G1> steps;
  steps.reserve(stride_);
  G1 acc;
  for (std::uint64_t j = 0; j < stride_; ++j)
  {
    steps.push_back(acc);
    acc += base;
  }
  auto affine = batch_affine(steps);
  baby_steps_.reserve(stride_);
  for (std::uint64_t j = 0; j < stride_; ++j)
  {
    baby_steps_.emplace(point_key(affine[j].x, affine[j].y), static_cast<std::uint32_t>(j));
  }
}

std::shared_ptr<BsgsTable const> BsgsTable::cached(G1 const &base, unsigned max_bits)
{
  static std::mutex                                                        mutex;
  static std::map<std::pair<G1::Compressed, unsigned>, std::shared_ptr<BsgsTable const>> cache;

  auto                        key = std::make_pair(base.compress(), max_bits);
  std::lock_guard<std::mutex> lock(mutex);
  auto                        it = cache.find(key);
  if (it != cache.end())
  {
    return it->second;
  }
  if (cache.size() >= 64)
  {
    cache.clear();  // bounded memory across many parameter sets
  }
  auto table = std::make_shared<BsgsTable const>(base, max_bits);
  cache.emplace(key, table);
  return table;
}

std::uint64_t BsgsTable::dlog(G1 const &target) const
{
  constexpr std::size_t kBatch = 512;

  std::uint64_t const range  = std::uint64_t{1} << max_bits_;
  std::uint64_t const giants = (range + stride_ - 1) / stride_;
  G1 const            step   = -(base_ * Scalar::from_u64(stride_));

  G1              cur = target;
  std::vector<G1> batch;
  batch.reserve(kBatch);
  for (std::uint64_t i0 = 0; i0 < giants; i0 += kBatch)
  {
    batch.clear();
    auto count = std::min<std::uint64_t>(kBatch, giants - i0);
    for (std::uint64_t k = 0; k < count; ++k)
    {
      batch.push_back(cur);
      cur += step;
    }
    auto affine = batch_affine(batch);
    for (std::uint64_t k = 0; k < count; ++k)
    {
      auto [lo, hi] = baby_steps_.equal_range(point_key(affine[k].x, affine[k].y));
      for (auto it = lo; it != hi; ++it)
      {
        std::uint64_t candidate = (i0 + k) * stride_ + it->second;
        if (candidate < range && base_ * Scalar::from_u64(candidate) == target)
        {
          return candidate;
        }
      }
    }
  }
  throw Error(ErrorCode::kNotInRange, "discrete log outside [0, 2^" + std::to_string(max_bits_) + ")");
}

std::uint64_t bsgs_dlog(BsgsTable const &table, G1 const &target)
{
  return table.dlog(target);
}

// ---------------------------------------------------------------- serialization

void put(ByteWriter &w, Scalar const &s)
{
  w.put_raw(s.to_bytes());
}

void put(ByteWriter &w, G1 const &p)
{
  w.put_raw(p.compress());
}

void put(ByteWriter &w, G2 const &p)
{
  w.put_raw(p.compress());
}

Scalar get_scalar(ByteReader &r)
{
  return Scalar::from_bytes(r.get_raw(Scalar::kSize));
}

G1 get_g1(ByteReader &r)
{
  return G1::decompress(r.get_raw(G1::kCompressedSize));
}

G2 get_g2(ByteReader &r)
{
  return G2::decompress(r.get_raw(G2::kCompressedSize));
}

std::vector<Scalar> get_scalar_vec(ByteReader &r)
{
  auto                n = r.get_count(Scalar::kSize);
  std::vector<Scalar> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(get_scalar(r));
  }
  return out;
}

std::vector<G1> get_g1_vec(ByteReader &r)
{
  auto            n = r.get_count(G1::kCompressedSize);
  std::vector<G1> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(get_g1(r));
  }
  return out;
}

std::vector<G2> get_g2_vec(ByteReader &r)
{
  auto            n = r.get_count(G2::kCompressedSize);
  std::vector<G2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(get_g2(r));
  }
  return out;
}

}  // namespace vpas::algebra
