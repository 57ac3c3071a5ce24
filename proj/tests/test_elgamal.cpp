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

#include "vpas/elgamal.hpp"

using namespace vpas;
using namespace vpas::elgamal;

TEST_SUITE("baseline_elgamal")
{
  TEST_CASE("dkg keys multiply into the joint key")
  {
    Rng  rng = Rng::seeded(31);
    auto d   = dkg(4, rng);
    REQUIRE(d.keypairs.size() == 4);
    Scalar sum;
    for (auto const &kp : d.keypairs)
    {
      CHECK(kp.pk == G1::generator() * kp.sk);
      sum += kp.sk;
    }
    CHECK(d.pk_alpha == G1::generator() * sum);
  }

  TEST_CASE("encryption is additively homomorphic")
  {
    Rng    rng = Rng::seeded(32);
    auto   d   = dkg(3, rng);
    Scalar sk;
    for (auto const &kp : d.keypairs)
    {
      sk += kp.sk;
    }
    auto a = encrypt(100, d.pk_alpha, 16, rng);
    auto b = encrypt(23, d.pk_alpha, 16, rng);
    CHECK(decrypt(sk, a, 16) == 100);
    CHECK(decrypt(sk, add(a, b), 16) == 123);
    CHECK_FALSE(encrypt(5, d.pk_alpha, 16, rng) == encrypt(5, d.pk_alpha, 16, rng));
  }

  TEST_CASE("re-encryption to a collector key")
  {
    Rng  rng  = Rng::seeded(33);
    auto d    = dkg(3, rng);
    auto coll = Keypair::generate(rng);
    auto ct   = add(encrypt(7, d.pk_alpha, 8, rng), encrypt(9, d.pk_alpha, 8, rng));

    std::vector<ReencShare> shares;
    for (auto const &kp : d.keypairs)
    {
      shares.push_back(reenc_share(ct, kp.sk, coll.pk, rng));
    }
    CHECK(decrypt(coll.sk, combine_reenc(ct, shares), 8) == 16);

    // a missing share leaves the result undecryptable in range
    std::vector<ReencShare> partial(shares.begin(), shares.end() - 1);
    CHECK_ERROR(decrypt(coll.sk, combine_reenc(ct, partial), 8), ErrorCode::kNotInRange);
  }

  TEST_CASE("decryption outside the chunk range is an error")
  {
    Rng  rng = Rng::seeded(34);
    auto kp  = Keypair::generate(rng);
    auto ct  = encrypt(300, kp.pk, 16, rng);
    CHECK(decrypt(kp.sk, ct, 16) == 300);
    CHECK_ERROR(decrypt(kp.sk, ct, 8), ErrorCode::kNotInRange);
    CHECK_ERROR(encrypt(256, kp.pk, 8, rng), ErrorCode::kNotInRange);
  }
}
