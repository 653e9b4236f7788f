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

#include "packmap/error.hpp"

#include <utility>

namespace packmap {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotSquare: return "NotSquare";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kAsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::kNegativeDistance: return "NegativeDistance";
    case ErrorKind::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::kTriangleViolation: return "TriangleViolation";
    case ErrorKind::kZeroDistanceDistinctPoints:
      return "ZeroDistanceDistinctPoints";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kInvalidDilation: return "InvalidDilation";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNonpositiveParameter: return "NonpositiveParameter";
    case ErrorKind::kDegenerateScaleWindow: return "DegenerateScaleWindow";
    case ErrorKind::kEmptyGrid: return "EmptyGrid";
    case ErrorKind::kZeroTotalMass: return "ZeroTotalMass";
    case ErrorKind::kNotInF: return "NotInF";
    case ErrorKind::kEmptyF: return "EmptyF";
    case ErrorKind::kOutOfRangeValues: return "OutOfRangeValues";
    case ErrorKind::kMismatchedInputs: return "MismatchedInputs";
    case ErrorKind::kInvalidDistortion: return "InvalidDistortion";
    case ErrorKind::kOutOfUnitInterval: return "OutOfUnitInterval";
    case ErrorKind::kNotUltrametric: return "NotUltrametric";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnknownCommand: return "UnknownCommand";
    case ErrorKind::kParameterOutOfRange: return "ParameterOutOfRange";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::vector<std::size_t> witness)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace packmap
