// Copyright 2026 The packmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PACKMAP_ERROR_HPP_
#define PACKMAP_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace packmap {

enum class ErrorKind {
  kNotSquare,
  kNonFinite,
  kAsymmetricMatrix,
  kNegativeDistance,
  kNonzeroDiagonal,
  kTriangleViolation,
  kZeroDistanceDistinctPoints,
  kIndexOutOfRange,
  kInvalidDilation,
  kTooLarge,
  kNonpositiveParameter,
  kDegenerateScaleWindow,
  kEmptyGrid,
  kZeroTotalMass,
  kNotInF,
  kEmptyF,
  kOutOfRangeValues,
  kMismatchedInputs,
  kInvalidDistortion,
  kOutOfUnitInterval,
  kNotUltrametric,
  kParseError,
  kUnknownCommand,
  kParameterOutOfRange,
};

std::string_view error_kind_name(ErrorKind kind);

// All library failures surface as this exception. `witness` carries the
// offending indices when there are any (e.g. the triple of a triangle
// violation, or the bad index of an out-of-range lookup).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::size_t> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace packmap

#endif  // PACKMAP_ERROR_HPP_
