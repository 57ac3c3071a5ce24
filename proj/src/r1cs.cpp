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

#include "vpas/r1cs.hpp"
#include "vpas/error.hpp"

#include <map>

namespace vpas::snark {

LinComb::LinComb(Var v)
{
  terms_.emplace_back(v, Scalar::one());
}

LinComb LinComb::constant(Scalar c)
{
  LinComb lc;
  lc.terms_.emplace_back(Var::one(), c);
  return lc;
}

LinComb &LinComb::add(Var v, Scalar coeff)
{
  terms_.emplace_back(v, coeff);
  return *this;
}

LinComb &LinComb::compact()
{
  auto key = [](Var v) { return std::pair{static_cast<int>(v.kind()), v.index()}; };
  std::map<std::pair<int, std::uint32_t>, std::size_t> slot;
  std::vector<Term>                                    merged;
  for (auto const &[v, k] : terms_)
  {
    auto [it, fresh] = slot.try_emplace(key(v), merged.size());
    if (fresh)
    {
      merged.emplace_back(v, k);
    }
    else
    {
      merged[it->second].second += k;
    }
  }
  std::erase_if(merged, [](Term const &t) { return t.second.is_zero(); });
  terms_ = std::move(merged);
  return *this;
}

LinComb operator+(LinComb a, LinComb const &b)
{
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  return a;
}

LinComb operator-(LinComb a, LinComb const &b)
{
  for (auto const &[v, k] : b.terms_)
  {
    a.terms_.emplace_back(v, -k);
  }
  return a;
}

LinComb operator*(LinComb a, Scalar const &k)
{
  for (auto &term : a.terms_)
  {
    term.second *= k;
  }
  return a;
}

Var ConstraintSystem::alloc_public(Scalar value)
{
  if (!witness_.empty() || !constraints_.empty())
  {
    // keeps z = (1, public, witness) ordering trivially stable across passes
    throw Error(ErrorCode::kInvalidArgument, "public inputs must be allocated first");
  }
  public_.push_back(value);
  return {Var::Kind::kPublic, static_cast<std::uint32_t>(public_.size() - 1)};
}

Var ConstraintSystem::alloc_witness(Scalar value)
{
  witness_.push_back(value);
  return {Var::Kind::kWitness, static_cast<std::uint32_t>(witness_.size() - 1)};
}

void ConstraintSystem::enforce(LinComb a, LinComb b, LinComb c)
{
  constraints_.push_back({std::move(a), std::move(b), std::move(c)});
}

Scalar ConstraintSystem::value(Var v) const
{
  switch (v.kind())
  {
  case Var::Kind::kOne:
    return Scalar::one();
  case Var::Kind::kPublic:
    return public_.at(v.index());
  case Var::Kind::kWitness:
    return witness_.at(v.index());
  }
  return {};
}

Scalar ConstraintSystem::eval(LinComb const &lc) const
{
  Scalar acc;
  for (auto const &[v, k] : lc.terms())
  {
    acc += value(v) * k;
  }
  return acc;
}

std::size_t ConstraintSystem::flat_index(Var v) const
{
  switch (v.kind())
  {
  case Var::Kind::kOne:
    return 0;
  case Var::Kind::kPublic:
    return 1 + v.index();
  case Var::Kind::kWitness:
    return 1 + public_.size() + v.index();
  }
  return 0;
}

std::vector<Scalar> ConstraintSystem::assignment() const
{
  std::vector<Scalar> z;
  z.reserve(num_variables());
  z.push_back(Scalar::one());
  z.insert(z.end(), public_.begin(), public_.end());
  z.insert(z.end(), witness_.begin(), witness_.end());
  return z;
}

std::optional<std::size_t> ConstraintSystem::first_unsatisfied() const
{
  for (std::size_t i = 0; i < constraints_.size(); ++i)
  {
    auto const &c = constraints_[i];
    if (!(eval(c.a) * eval(c.b) == eval(c.c)))
    {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace vpas::snark
