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

#include "vpas/algebra.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace vpas::snark {

using algebra::Scalar;

/// Handle to a circuit variable. The constant one, public inputs and witness
/// values live in separate index spaces until the system is finalized into
/// the flat assignment z = (1, public..., witness...).
class Var
{
public:
  enum class Kind : std::uint8_t
  {
    kOne,
    kPublic,
    kWitness
  };

  Var() = default;
  Var(Kind kind, std::uint32_t index)
    : kind_(kind)
    , index_(index)
  {}

  static Var one()
  {
    return {Kind::kOne, 0};
  }

  Kind kind() const
  {
    return kind_;
  }
  std::uint32_t index() const
  {
    return index_;
  }

private:
  Kind          kind_  = Kind::kOne;
  std::uint32_t index_ = 0;
};

class LinComb
{
public:
  using Term = std::pair<Var, Scalar>;

  LinComb() = default;
  LinComb(Var v);  // NOLINT(google-explicit-constructor)
  static LinComb constant(Scalar c);
  static LinComb constant(std::int64_t c)
  {
    return constant(Scalar::from_i64(c));
  }

  LinComb &add(Var v, Scalar coeff);

  /// Merges repeated variables and drops zero coefficients.
  LinComb &compact();

  std::vector<Term> const &terms() const
  {
    return terms_;
  }

  friend LinComb operator+(LinComb a, LinComb const &b);
  friend LinComb operator-(LinComb a, LinComb const &b);
  friend LinComb operator*(LinComb a, Scalar const &k);

private:
  std::vector<Term> terms_;
};

struct Constraint
{
  LinComb a;
  LinComb b;
  LinComb c;
};

/// Rank-1 constraint system with an attached assignment. Built once without
/// meaningful values to fix the shape for setup, and again with values for
/// proving; both passes must allocate identically.
class ConstraintSystem
{
public:
  Var  alloc_public(Scalar value = {});
  Var  alloc_witness(Scalar value = {});
  void enforce(LinComb a, LinComb b, LinComb c);

  Scalar value(Var v) const;
  Scalar eval(LinComb const &lc) const;

  std::size_t num_public() const
  {
    return public_.size();
  }
  std::size_t num_witness() const
  {
    return witness_.size();
  }
  std::size_t num_constraints() const
  {
    return constraints_.size();
  }
  /// 1 + num_public + num_witness.
  std::size_t num_variables() const
  {
    return 1 + public_.size() + witness_.size();
  }

  std::vector<Constraint> const &constraints() const
  {
    return constraints_;
  }
  std::vector<Scalar> const &public_values() const
  {
    return public_;
  }

  /// Position of v in the flat assignment.
  std::size_t flat_index(Var v) const;
  /// z = (1, public..., witness...).
  std::vector<Scalar> assignment() const;

  /// Index of the first violated constraint, if any.
  std::optional<std::size_t> first_unsatisfied() const;

private:
  std::vector<Scalar>     public_;
  std::vector<Scalar>     witness_;
  std::vector<Constraint> constraints_;
};

using R1cs = ConstraintSystem;

}  // namespace vpas::snark
