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

// Readers for the on-disk formats:
//   matrix  JSON {"n": int, "dist": [[...], ...]} (optional "labels")
//   cloud   CSV, one point per row, columns are Euclidean coordinates
//   values  CSV rows "index,v_1,...,v_m"
// CSV input ignores blank lines, lines starting with '#', and a first row whose
// first field starts with a letter (a header). All failures are ParseError
// with the offending line number in the message.

#ifndef PACKMAP_IO_HPP_
#define PACKMAP_IO_HPP_

#include <istream>
#include <string>
#include <vector>

#include "packmap/metric_space.hpp"

namespace packmap {

enum class InputFormat { kMatrix, kCloud };

FiniteMetricSpace parse_distance_matrix_json(std::istream& in);
std::vector<std::vector<double>> parse_point_cloud_csv(std::istream& in);

struct IndexedValues {
  Index index = 0;
  std::vector<double> values;
};
std::vector<IndexedValues> parse_values_csv(std::istream& in);

// File variants; an unreadable path is a ParseError.
FiniteMetricSpace load_space(const std::string& path, InputFormat format);
std::vector<IndexedValues> load_values(const std::string& path);

// "0,3,5" -> {0, 3, 5}; ParseError on malformed entries.
std::vector<Index> parse_index_list(const std::string& text);

}  // namespace packmap

#endif  // PACKMAP_IO_HPP_
