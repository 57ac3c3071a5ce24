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

#include "vpas/algebra.hpp"
#include "vpas/bytes.hpp"
#include "vpas/rng.hpp"

#include <set>

using namespace vpas;
using namespace vpas::algebra;
using vpas::test::cpp_int;
using vpas::test::from_int;
using vpas::test::modulus;
using vpas::test::to_int;

TEST_SUITE("bytes")
{
  TEST_CASE("sha256 matches the FIPS 180-2 vector for \"abc\"")
  {
    CHECK(to_hex(sha256(as_bytes("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("hex round trip and malformed hex")
  {
    Bytes b{0x00, 0x7f, 0x80, 0xff};
    CHECK(to_hex(b) == "007f80ff");
    CHECK(from_hex("007F80ff") == b);
    CHECK_ERROR(from_hex("abc"), ErrorCode::kDecode);
    CHECK_ERROR(from_hex("zz"), ErrorCode::kDecode);
  }

  TEST_CASE("writer and reader agree; overruns are decode errors")
  {
    ByteWriter w;
    w.put_u64(0x0102030405060708ULL);
    w.put_string("vpas");
    w.put_u8(9);
    Bytes const buf = w.bytes();
    REQUIRE(buf.size() == 8 + 8 + 4 + 1);
    CHECK(buf[0] == 0x08);  // little-endian

    ByteReader r(buf);
    CHECK(r.get_u64() == 0x0102030405060708ULL);
    CHECK(r.get_string() == "vpas");
    CHECK(r.get_u8() == 9);
    CHECK(r.at_end());
    CHECK_ERROR(r.get_u8(), ErrorCode::kDecode);

    ByteWriter huge;
    huge.put_u64(1ULL << 40);
    ByteReader hr(huge.bytes());
    CHECK_ERROR(hr.get_count(48), ErrorCode::kDecode);
  }
}

TEST_SUITE("rng")
{
  TEST_CASE("seeded streams are reproducible and forks are independent")
  {
    Rng a = Rng::seeded(11), b = Rng::seeded(11), c = Rng::seeded(12);
    for (int i = 0; i < 16; ++i)
    {
      auto x = a.next_u64();
      CHECK(x == b.next_u64());
      CHECK(x != c.next_u64());
    }
    // a fork depends on the seed and the label, not on prior draws
    Rng fresh = Rng::seeded(11);
    CHECK(a.fork("x").next_u64() == fresh.fork("x").next_u64());
    CHECK(fresh.fork("x").next_u64() != fresh.fork("y").next_u64());
  }

  TEST_CASE("uniform stays below its bound and covers it")
  {
    Rng                     r = Rng::seeded(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i)
    {
      auto v = r.uniform(7);
      CHECK(v < 7);
      seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK_FALSE(Rng::system().is_seeded());
  }
}

TEST_SUITE("algebra")
{
  TEST_CASE("scalar field arithmetic agrees with big-integer arithmetic mod p")
  {
    Rng rng = Rng::seeded(1);
    for (int i = 0; i < 200; ++i)
    {
      Scalar  a = Scalar::random(rng), b = Scalar::random_nonzero(rng);
      cpp_int ia = to_int(a), ib = to_int(b);
      CHECK(to_int(a + b) == (ia + ib) % modulus());
      CHECK(to_int(a - b) == (ia - ib + modulus()) % modulus());
      CHECK(to_int(a * b) == ia * ib % modulus());
      CHECK(to_int(b.inverse()) == vpas::test::pow_mod(ib, modulus() - 2));
      CHECK(to_int(a.pow(65537)) == vpas::test::pow_mod(ia, 65537));
    }
  }

  TEST_CASE("scalar encodings")
  {
    CHECK(to_int(Scalar::from_i64(-1)) == modulus() - 1);
    CHECK(Scalar::from_u64(42).to_u64() == 42);
    CHECK_FALSE((-Scalar::one()).to_u64().has_value());

    std::array<std::uint8_t, 32> le{};
    cpp_int                      p = modulus();
    for (auto &b : le)
    {
      b = static_cast<std::uint8_t>(p & 0xff);
      p >>= 8;
    }
    CHECK_ERROR(Scalar::from_bytes(le), ErrorCode::kDecode);
    CHECK_ERROR(Scalar::zero().inverse(), ErrorCode::kInvalidArgument);

    std::array<std::uint8_t, 40> be{};
    be.fill(0xff);
    cpp_int wide = 0;
    for (auto x : be)
    {
      wide = (wide << 8) | x;
    }
    CHECK(to_int(Scalar::from_be_bytes_reduce(be)) == wide % modulus());
  }

  TEST_CASE("square roots")
  {
    Rng rng = Rng::seeded(2);
    for (int i = 0; i < 20; ++i)
    {
      Scalar x = Scalar::random(rng);
      auto   r = x.square().sqrt();
      REQUIRE(r.has_value());
      CHECK(r->square() == x.square());
    }
    // p = 1 mod 4 here, and 5 is a non-residue (Euler's criterion below)
    CHECK(vpas::test::pow_mod(5, (modulus() - 1) / 2) == modulus() - 1);
    CHECK_FALSE(Scalar::from_u64(5).sqrt().has_value());
  }

  TEST_CASE("roots of unity have exact order")
  {
    for (unsigned k : {1u, 4u, 12u, 32u})
    {
      cpp_int w     = to_int(root_of_unity(k));
      cpp_int order = cpp_int(1) << k;
      CHECK(vpas::test::pow_mod(w, order) == 1);
      CHECK(vpas::test::pow_mod(w, order / 2) == modulus() - 1);
    }
  }

  TEST_CASE("group laws, scalar multiplication and encodings")
  {
    Rng    rng = Rng::seeded(4);
    Scalar a = Scalar::random(rng), b = Scalar::random(rng);
    G1     g = G1::generator();
    CHECK(g * a + g * b == g * (a + b));
    CHECK((g * a) * b == g * (a * b));
    CHECK((g * Scalar::zero()).is_identity());
    CHECK(g - g == G1::identity());

    G2 h = G2::generator();
    CHECK(h * a + h * b == h * (a + b));

    auto c1 = (g * a).compress();
    CHECK(c1.size() == 48);
    CHECK(G1::decompress(c1) == g * a);
    auto c2 = (h * a).compress();
    CHECK(c2.size() == 96);
    CHECK(G2::decompress(c2) == h * a);
    CHECK(G1::decompress(G1::identity().compress()).is_identity());

    auto bad = c1;
    bad[47] ^= 0x01;
    bad[20] ^= 0x55;
    CHECK_ERROR(G1::decompress(bad), ErrorCode::kDecode);
    CHECK_ERROR(G1::decompress(std::span(c1).first(47)), ErrorCode::kDecode);
  }

  TEST_CASE("pairing is bilinear and non-degenerate")
  {
    Rng    rng = Rng::seeded(5);
    Scalar a = Scalar::random_nonzero(rng), b = Scalar::random_nonzero(rng);
    GT     base = pairing(G1::generator(), G2::generator());
    CHECK_FALSE(base.is_one());
    CHECK(pairing(G1::generator() * a, G2::generator() * b) == base.pow(a * b));

    std::vector<G1> ps{G1::generator() * a, G1::generator() * (-a)};
    std::vector<G2> qs{G2::generator() * b, G2::generator() * b};
    CHECK(multi_pairing(ps, qs).is_one());
    CHECK(GT::deserialize(base.serialize()) == base);
    CHECK(base.serialize().size() == 576);
  }

  TEST_CASE("multi-scalar multiplication equals the naive sum")
  {
    Rng                 rng = Rng::seeded(6);
    std::vector<G1>     ps;
    std::vector<G2>     qs;
    std::vector<Scalar> ks;
    G1                  naive1;
    G2                  naive2;
    for (int i = 0; i < 37; ++i)
    {
      ps.push_back(G1::random(rng));
      qs.push_back(G2::random(rng));
      ks.push_back(Scalar::random(rng));
      naive1 += ps.back() * ks.back();
      naive2 += qs.back() * ks.back();
    }
    CHECK(msm(ps, ks) == naive1);
    CHECK(msm(qs, ks) == naive2);
    CHECK(G1Bases(ps).msm(ks) == naive1);
    CHECK(G2Bases(qs).msm(ks) == naive2);

    G1FixedBase fb(ps[0]);
    auto        batch = fb.batch_mul(ks);
    for (std::size_t i = 0; i < ks.size(); ++i)
    {
      CHECK(batch[i] == ps[0] * ks[i]);
    }
    CHECK(G2FixedBase(qs[0]).mul(ks[3]) == qs[0] * ks[3]);
  }

  TEST_CASE("baby-step giant-step recovers logarithms inside its range only")
  {
    Rng       rng  = Rng::seeded(7);
    G1        base = G1::random(rng);
    BsgsTable table(base, 20);
    for (std::uint64_t k : {0ULL, 1ULL, 2ULL, 1023ULL, 1024ULL, (1ULL << 20) - 1})
    {
      CHECK(table.dlog(base * Scalar::from_u64(k)) == k);
    }
    for (int i = 0; i < 20; ++i)
    {
      auto k = rng.uniform(1ULL << 20);
      CHECK(bsgs_dlog(table, base * Scalar::from_u64(k)) == k);
    }
    CHECK_ERROR(table.dlog(base * Scalar::from_u64(1ULL << 20)), ErrorCode::kNotInRange);
    CHECK(BsgsTable::cached(base, 20) == BsgsTable::cached(base, 20));
  }

  TEST_CASE("hash_to_scalar is domain separated")
  {
    auto data = as_bytes("payload");
    CHECK(hash_to_scalar("a", data) == hash_to_scalar("a", data));
    CHECK_FALSE(hash_to_scalar("a", data) == hash_to_scalar("b", data));
  }

  TEST_CASE("vector serialization round trip")
  {
    Rng             rng = Rng::seeded(8);
    std::vector<G1> v{G1::random(rng), G1::random(rng), G1::identity()};
    ByteWriter      w;
    put_vec(w, v);
    CHECK(w.bytes().size() == 8 + 3 * 48);
    ByteReader r(w.bytes());
    CHECK(get_g1_vec(r) == v);
    r.expect_end();
  }
}
