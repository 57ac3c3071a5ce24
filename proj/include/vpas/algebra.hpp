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

// Pairing-group layer over BLS12-381 (blst backend). Every protocol value is a
// Scalar (element of Z_p, p the prime group order) or an element of G1, G2, GT.

#include "vpas/bytes.hpp"
#include "vpas/rng.hpp"

#include <blst.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vpas::algebra {

class Scalar
{
public:
  static constexpr std::size_t kSize = 32;

  Scalar() = default;

  static Scalar zero()
  {
    return {};
  }
  static Scalar one();
  static Scalar from_u64(std::uint64_t v);
  static Scalar from_i64(std::int64_t v);
  static Scalar random(Rng &rng);
  static Scalar random_nonzero(Rng &rng);

  /// Canonical 32-byte little-endian decoding; values >= p are rejected.
  static Scalar from_bytes(std::span<std::uint8_t const> le);
  /// Big-endian bytes of any length, reduced modulo p.
  static Scalar from_be_bytes_reduce(std::span<std::uint8_t const> be);

  std::array<std::uint8_t, kSize> to_bytes() const;  // little-endian
  blst_scalar                     to_blst() const;

  /// Value as an integer if it is below 2^64.
  std::optional<std::uint64_t> to_u64() const;

  bool is_zero() const;

  Scalar inverse() const;  // throws on zero
  Scalar square() const;
  Scalar pow(std::uint64_t e) const;
  Scalar pow(std::span<std::uint8_t const> le_exponent) const;
  /// Some square root if one exists.
  std::optional<Scalar> sqrt() const;

  friend Scalar operator+(Scalar const &a, Scalar const &b);
  friend Scalar operator-(Scalar const &a, Scalar const &b);
  friend Scalar operator*(Scalar const &a, Scalar const &b);
  Scalar        operator-() const;
  Scalar       &operator+=(Scalar const &o)
  {
    return *this = *this + o;
  }
  Scalar &operator-=(Scalar const &o)
  {
    return *this = *this - o;
  }
  Scalar &operator*=(Scalar const &o)
  {
    return *this = *this * o;
  }
  friend bool operator==(Scalar const &a, Scalar const &b);

  blst_fr const &raw() const
  {
    return v_;
  }

private:
  blst_fr v_{};
};

/// p - 1 = 2^32 * q; the field has 2^32-th roots of unity for radix-2 FFTs.
inline constexpr unsigned kTwoAdicity = 32;
Scalar                    root_of_unity(unsigned log_size);
Scalar                    multiplicative_generator();

class G1
{
public:
  static constexpr std::size_t kCompressedSize = 48;
  using Compressed                             = std::array<std::uint8_t, kCompressedSize>;

  G1() = default;  // identity

  static G1 identity()
  {
    return {};
  }
  static G1 generator();
  static G1 random(Rng &rng);

  /// Only on-curve, in-subgroup encodings (or the identity encoding) decode.
  static G1  decompress(std::span<std::uint8_t const> bytes);
  Compressed compress() const;

  bool           is_identity() const;
  blst_p1_affine to_affine() const;
  static G1      from_affine(blst_p1_affine const &a);

  friend G1 operator+(G1 const &a, G1 const &b);
  friend G1 operator-(G1 const &a, G1 const &b);
  friend G1 operator*(G1 const &p, Scalar const &k);
  G1        operator-() const;
  G1       &operator+=(G1 const &o)
  {
    return *this = *this + o;
  }
  friend bool operator==(G1 const &a, G1 const &b);

  blst_p1 const &raw() const
  {
    return p_;
  }

private:
  blst_p1 p_{};
};

class G2
{
public:
  static constexpr std::size_t kCompressedSize = 96;
  using Compressed                             = std::array<std::uint8_t, kCompressedSize>;

  G2() = default;

  static G2 identity()
  {
    return {};
  }
  static G2 generator();
  static G2 random(Rng &rng);

  static G2  decompress(std::span<std::uint8_t const> bytes);
  Compressed compress() const;

  bool           is_identity() const;
  blst_p2_affine to_affine() const;
  static G2      from_affine(blst_p2_affine const &a);

  friend G2 operator+(G2 const &a, G2 const &b);
  friend G2 operator-(G2 const &a, G2 const &b);
  friend G2 operator*(G2 const &p, Scalar const &k);
  G2        operator-() const;
  G2       &operator+=(G2 const &o)
  {
    return *this = *this + o;
  }
  friend bool operator==(G2 const &a, G2 const &b);

private:
  blst_p2 p_{};
};

class GT
{
public:
  static constexpr std::size_t kSize = 576;

  GT();  // identity

  static GT one()
  {
    return {};
  }

  static GT                        deserialize(std::span<std::uint8_t const> bytes);
  std::array<std::uint8_t, kSize> serialize() const;

  bool is_one() const;
  GT   pow(Scalar const &k) const;

  friend GT   operator*(GT const &a, GT const &b);
  friend bool operator==(GT const &a, GT const &b);

private:
  friend GT pairing(G1 const &a, G2 const &b);
  friend GT multi_pairing(std::span<G1 const> as, std::span<G2 const> bs);

  blst_fp12 v_;
};

GT pairing(G1 const &a, G2 const &b);
/// Product of pairings with a single final exponentiation.
GT multi_pairing(std::span<G1 const> as, std::span<G2 const> bs);

/// Multi-scalar multiplication: sum of points[i] * scalars[i] (written
/// multiplicatively elsewhere as a product of powers).
G1 msm(std::span<G1 const> points, std::span<Scalar const> scalars);
G2 msm(std::span<G2 const> points, std::span<Scalar const> scalars);

/// Affine copies of a fixed list of bases, reused across many MSMs.
class G1Bases
{
public:
  G1Bases() = default;
  explicit G1Bases(std::span<G1 const> points);

  std::size_t size() const
  {
    return affine_.size();
  }
  G1 msm(std::span<Scalar const> scalars) const;

private:
  std::vector<blst_p1_affine> affine_;
};

class G2Bases
{
public:
  G2Bases() = default;
  explicit G2Bases(std::span<G2 const> points);

  std::size_t size() const
  {
    return affine_.size();
  }
  G2 msm(std::span<Scalar const> scalars) const;

private:
  std::vector<blst_p2_affine> affine_;
};

/// Byte-windowed table for repeated multiplication of one fixed point.
class G1FixedBase
{
public:
  explicit G1FixedBase(G1 const &base);
  G1              mul(Scalar const &k) const;
  std::vector<G1> batch_mul(std::span<Scalar const> ks) const;

private:
  std::vector<blst_p1_affine> table_;
};

class G2FixedBase
{
public:
  explicit G2FixedBase(G2 const &base);
  G2              mul(Scalar const &k) const;
  std::vector<G2> batch_mul(std::span<Scalar const> ks) const;

private:
  std::vector<blst_p2_affine> table_;
};

Scalar hash_to_scalar(std::string_view domain_tag, std::span<std::uint8_t const> data);

/// Baby-step giant-step table for discrete logs of base^k, k in [0, 2^max_bits).
/// Holds 2^ceil(max_bits/2) baby steps; giant steps have that stride.
class BsgsTable
{
public:
  static constexpr unsigned kMaxBits = 40;

  BsgsTable(G1 const &base, unsigned max_bits);

  /// Process-wide cache keyed by (base, max_bits).
  static std::shared_ptr<BsgsTable const> cached(G1 const &base, unsigned max_bits);

  /// k with base^k == target; throws Error(kNotInRange) if k is outside the range.
  std::uint64_t dlog(G1 const &target) const;

  G1 const &base() const
  {
    return base_;
  }
  unsigned max_bits() const
  {
    return max_bits_;
  }
  std::uint64_t stride() const
  {
    return stride_;
  }
  std::size_t size() const
  {
    return baby_steps_.size();
  }

private:
  G1                                                  base_;
  unsigned                                            max_bits_;
  std::uint64_t                                       stride_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> baby_steps_;
};

std::uint64_t bsgs_dlog(BsgsTable const &table, G1 const &target);

// Serialization helpers shared by every module.
void   put(ByteWriter &w, Scalar const &s);
void   put(ByteWriter &w, G1 const &p);
void   put(ByteWriter &w, G2 const &p);
Scalar get_scalar(ByteReader &r);
G1     get_g1(ByteReader &r);
G2     get_g2(ByteReader &r);

template <typename T>
void put_vec(ByteWriter &w, std::vector<T> const &items)
{
  w.put_u64(items.size());
  for (auto const &item : items)
  {
    put(w, item);
  }
}

std::vector<Scalar> get_scalar_vec(ByteReader &r);
std::vector<G1>     get_g1_vec(ByteReader &r);
std::vector<G2>     get_g2_vec(ByteReader &r);

}  // namespace vpas::algebra
