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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace vpas {

enum class ErrorCode
{
  kInvalidArgument,
  kShapeMismatch,
  kNotInRange,
  kUnsatisfied,
  kDecode,
  kPokRejected,
  kSubmissionRejected,
  kAggregateRejected,
  kTreeFull,
  kDegenerate,
  kParse,
  kIo,
};

char const *to_string(ErrorCode code);

/// Single exception type for the library. `index()` carries the offending
/// client, chunk, constraint or step when the failing operation has one.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &message, std::optional<std::size_t> index = {})
    : std::runtime_error(message)
    , code_(code)
    , index_(index)
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

  std::optional<std::size_t> index() const noexcept
  {
    return index_;
  }

private:
  ErrorCode                  code_;
  std::optional<std::size_t> index_;
};

}  // namespace vpas
