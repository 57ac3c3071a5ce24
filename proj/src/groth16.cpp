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

#include "vpas/groth16.hpp"
#include "vpas/error.hpp"

#include <bit>

namespace vpas::snark {
namespace {

unsigned log2_exact(std::size_t n)
{
  if (n == 0 || !std::has_single_bit(n))
  {
    throw Error(ErrorCode::kInvalidArgument, "transform size must be a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(n));
}

void bit_reverse(std::vector<Scalar> &v)
{
  std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i)
  {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1)
    {
      j ^= bit;
    }
    j ^= bit;
    if (i < j)
    {
      std::swap(v[i], v[j]);
    }
  }
}

void transform(std::vector<Scalar> &v, Scalar const &omega)
{
  bit_reverse(v);
  std::size_t n = v.size();
  for (std::size_t len = 2; len <= n; len <<= 1)
  {
    Scalar w_len = omega.pow(static_cast<std::uint64_t>(n / len));
    std::vector<Scalar> twiddles(len / 2);
    twiddles[0] = Scalar::one();
    for (std::size_t k = 1; k < len / 2; ++k)
    {
      twiddles[k] = twiddles[k - 1] * w_len;
    }
    for (std::size_t i = 0; i < n; i += len)
    {
      for (std::size_t k = 0; k < len / 2; ++k)
      {
        Scalar u = v[i + k];
        Scalar t = v[i + k + len / 2] * twiddles[k];
        v[i + k]           = u + t;
        v[i + k + len / 2] = u - t;
      }
    }
  }
}

void scale_by_powers(std::vector<Scalar> &v, Scalar const &g)
{
  Scalar acc = Scalar::one();
  for (auto &x : v)
  {
    x *= acc;
    acc *= g;
  }
}

void batch_invert(std::vector<Scalar> &v)
{
  std::vector<Scalar> prefix(v.size());
  Scalar              acc = Scalar::one();
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    prefix[i] = acc;
    acc *= v[i];
  }
  Scalar inv = acc.inverse();
  for (std::size_t i = v.size(); i-- > 0;)
  {
    Scalar next = inv * v[i];
    v[i]        = inv * prefix[i];
    inv         = next;
  }
}

}  // namespace

void fft(std::vector<Scalar> &values)
{
  transform(values, algebra::root_of_unity(log2_exact(values.size())));
}

void ifft(std::vector<Scalar> &values)
{
  auto omega = algebra::root_of_unity(log2_exact(values.size()));
  transform(values, omega.inverse());
  Scalar n_inv = Scalar::from_u64(values.size()).inverse();
  for (auto &x : values)
  {
    x *= n_inv;
  }
}

// ---------------------------------------------------------------- Proof

Bytes Proof::serialize() const
{
  ByteWriter w;
  algebra::put(w, a);
  algebra::put(w, b);
  algebra::put(w, c);
  return std::move(w).take();
}

Proof Proof::deserialize(std::span<std::uint8_t const> bytes)
{
  ByteReader r(bytes);
  Proof      p;
  p.a = algebra::get_g1(r);
  p.b = algebra::get_g2(r);
  p.c = algebra::get_g1(r);
  r.expect_end();
  return p;
}

void VerifyingKey::serialize(ByteWriter &w) const
{
  algebra::put(w, alpha_g1);
  algebra::put(w, beta_g2);
  algebra::put(w, gamma_g2);
  algebra::put(w, delta_g2);
  algebra::put(w, delta_g1);
  algebra::put_vec(w, ic);
}

VerifyingKey VerifyingKey::deserialize(ByteReader &r)
{
  VerifyingKey vk;
  vk.alpha_g1 = algebra::get_g1(r);
  vk.beta_g2  = algebra::get_g2(r);
  vk.gamma_g2 = algebra::get_g2(r);
  vk.delta_g2 = algebra::get_g2(r);
  vk.delta_g1 = algebra::get_g1(r);
  vk.ic       = algebra::get_g1_vec(r);
  if (vk.ic.empty())
  {
    throw Error(ErrorCode::kDecode, "verifying key without constant base");
  }
  return vk;
}

// ---------------------------------------------------------------- setup

std::size_t domain_size_for(ConstraintSystem const &cs)
{
  return std::bit_ceil(cs.num_constraints() + cs.num_public() + 1);
}

Crs setup(ConstraintSystem const &shape, Rng &rng, SetupExtras *extras)
{
  if (shape.num_constraints() == 0)
  {
    throw Error(ErrorCode::kInvalidArgument, "setup: empty constraint system");
  }
  std::size_t const n_cons = shape.num_constraints();
  std::size_t const l      = shape.num_public();
  std::size_t const m      = shape.num_variables();
  std::size_t const d      = domain_size_for(shape);
  Scalar const      omega  = algebra::root_of_unity(log2_exact(d));

  Scalar tau   = Scalar::random_nonzero(rng);
  Scalar alpha = Scalar::random_nonzero(rng);
  Scalar beta  = Scalar::random_nonzero(rng);
  Scalar gamma = Scalar::random_nonzero(rng);
  Scalar delta = Scalar::random_nonzero(rng);

  // Lagrange basis at tau: L_i(tau) = Z(tau)/d * w^i / (tau - w^i)
  Scalar z_tau = tau.pow(static_cast<std::uint64_t>(d)) - Scalar::one();
  if (z_tau.is_zero())
  {
    throw Error(ErrorCode::kDegenerate, "setup: tau landed in the evaluation domain");
  }
  std::vector<Scalar> denom(d);
  std::vector<Scalar> w_pow(d);
  Scalar              w = Scalar::one();
  for (std::size_t i = 0; i < d; ++i)
  {
    w_pow[i] = w;
    denom[i] = tau - w;
    w *= omega;
  }
  batch_invert(denom);
  Scalar const        scale = z_tau * Scalar::from_u64(d).inverse();
  std::vector<Scalar> lagrange(d);
  for (std::size_t i = 0; i < d; ++i)
  {
    lagrange[i] = scale * w_pow[i] * denom[i];
  }

  std::vector<Scalar> u(m), v(m), wv(m);
  auto const         &cons = shape.constraints();
  for (std::size_t k = 0; k < n_cons; ++k)
  {
    for (auto const &[var, coeff] : cons[k].a.terms())
    {
      u[shape.flat_index(var)] += coeff * lagrange[k];
    }
    for (auto const &[var, coeff] : cons[k].b.terms())
    {
      v[shape.flat_index(var)] += coeff * lagrange[k];
    }
    for (auto const &[var, coeff] : cons[k].c.terms())
    {
      wv[shape.flat_index(var)] += coeff * lagrange[k];
    }
  }
  // input-consistency rows: z_i * 0 = 0 for the constant and every public input
  for (std::size_t i = 0; i <= l; ++i)
  {
    u[i] += lagrange[n_cons + i];
  }

  Scalar const gamma_inv = gamma.inverse();
  Scalar const delta_inv = delta.inverse();

  std::vector<Scalar> ic_exp(l + 1);
  std::vector<Scalar> l_exp(m - l - 1);
  for (std::size_t j = 0; j < m; ++j)
  {
    Scalar t = beta * u[j] + alpha * v[j] + wv[j];
    if (j <= l)
    {
      ic_exp[j] = t * gamma_inv;
    }
    else
    {
      l_exp[j - l - 1] = t * delta_inv;
    }
  }
  std::vector<Scalar> h_exp(d - 1);
  Scalar              t_pow = z_tau * delta_inv;
  for (auto &h : h_exp)
  {
    h = t_pow;
    t_pow *= tau;
  }

  algebra::G1FixedBase const g_table(G1::generator());
  algebra::G2FixedBase const h_table(G2::generator());

  auto pk         = std::make_shared<ProvingKey>();
  pk->num_public  = l;
  pk->num_witness = shape.num_witness();
  pk->domain_size = d;
  pk->alpha_g1    = g_table.mul(alpha);
  pk->beta_g1     = g_table.mul(beta);
  pk->beta_g2     = h_table.mul(beta);
  pk->delta_g1    = g_table.mul(delta);
  pk->delta_g2    = h_table.mul(delta);
  pk->a_query     = algebra::G1Bases(g_table.batch_mul(u));
  pk->b_g1_query  = algebra::G1Bases(g_table.batch_mul(v));
  pk->b_g2_query  = algebra::G2Bases(h_table.batch_mul(v));
  pk->l_query     = algebra::G1Bases(g_table.batch_mul(l_exp));
  pk->h_query     = algebra::G1Bases(g_table.batch_mul(h_exp));

  Crs crs;
  crs.vk.alpha_g1 = pk->alpha_g1;
  crs.vk.beta_g2  = pk->beta_g2;
  crs.vk.gamma_g2 = h_table.mul(gamma);
  crs.vk.delta_g2 = pk->delta_g2;
  crs.vk.delta_g1 = pk->delta_g1;
  crs.vk.ic       = g_table.batch_mul(ic_exp);
  crs.pk          = std::move(pk);
  if (extras != nullptr)
  {
    extras->neg_gamma_g1 = -g_table.mul(gamma);
  }
  return crs;
}

// ---------------------------------------------------------------- prove

Proof prove(ProvingKey const &pk, ConstraintSystem const &cs, Rng &rng)
{
  if (cs.num_public() != pk.num_public || cs.num_witness() != pk.num_witness ||
      domain_size_for(cs) != pk.domain_size)
  {
    throw Error(ErrorCode::kShapeMismatch, "prove: system shape differs from setup");
  }
  if (auto bad = cs.first_unsatisfied())
  {
    throw Error(ErrorCode::kUnsatisfied, "constraint " + std::to_string(*bad) + " is unsatisfied",
                *bad);
  }

  std::size_t const   d = pk.domain_size;
  std::size_t const   l = cs.num_public();
  auto const          z = cs.assignment();
  std::vector<Scalar> a(d), b(d), c(d);
  auto const         &cons = cs.constraints();
  for (std::size_t k = 0; k < cons.size(); ++k)
  {
    a[k] = cs.eval(cons[k].a);
    b[k] = cs.eval(cons[k].b);
    c[k] = cs.eval(cons[k].c);
  }
  for (std::size_t i = 0; i <= l; ++i)
  {
    a[cons.size() + i] = z[i];
  }

  // h = (a*b - c) / Z, evaluated on the coset g*H where Z is the constant g^d - 1
  Scalar const g = algebra::multiplicative_generator();
  for (auto *poly : {&a, &b, &c})
  {
    ifft(*poly);
    scale_by_powers(*poly, g);
    fft(*poly);
  }
  Scalar const z_inv = (g.pow(static_cast<std::uint64_t>(d)) - Scalar::one()).inverse();
  for (std::size_t i = 0; i < d; ++i)
  {
    a[i] = (a[i] * b[i] - c[i]) * z_inv;
  }
  ifft(a);
  scale_by_powers(a, g.inverse());
  a.resize(d - 1);

  Scalar const r = Scalar::random(rng);
  Scalar const s = Scalar::random(rng);

  std::vector<Scalar> const witness(z.begin() + static_cast<std::ptrdiff_t>(l + 1), z.end());

  G1 const a_g1 = pk.alpha_g1 + pk.a_query.msm(z) + pk.delta_g1 * r;
  G2 const b_g2 = pk.beta_g2 + pk.b_g2_query.msm(z) + pk.delta_g2 * s;
  G1 const b_g1 = pk.beta_g1 + pk.b_g1_query.msm(z) + pk.delta_g1 * s;
  G1 const c_g1 = pk.l_query.msm(witness) + pk.h_query.msm(a) + a_g1 * s + b_g1 * r -
                  pk.delta_g1 * (r * s);
  return {a_g1, b_g2, c_g1};
}

// ---------------------------------------------------------------- verify

bool verify(VerifyingKey const &vk, std::span<Scalar const> public_inputs, Proof const &proof)
{
  if (public_inputs.size() != vk.num_public())
  {
    return false;
  }
  G1 acc = vk.ic[0];
  acc += algebra::msm(std::span<G1 const>(vk.ic).subspan(1), public_inputs);

  std::array<G1, 4> lhs{proof.a, -vk.alpha_g1, -acc, -proof.c};
  std::array<G2, 4> rhs{proof.b, vk.beta_g2, vk.gamma_g2, vk.delta_g2};
  return algebra::multi_pairing(lhs, rhs).is_one();
}

}  // namespace vpas::snark
