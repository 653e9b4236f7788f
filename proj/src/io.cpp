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

#include "packmap/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "packmap/error.hpp"

namespace packmap {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    fail(line, "expected a number, got '" + std::string(field) + "'");
  }
  return value;
}

Index parse_index(std::string_view field, std::size_t line) {
  field = trim(field);
  Index value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    fail(line, "expected a point index, got '" + std::string(field) + "'");
  }
  return value;
}

// Numeric CSV rows, skipping blanks, comments and a header; each row's line
// number is kept for error messages.
std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_rows(
    std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = view.find(',', start);
      fields.emplace_back(view.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.emplace_back(number, std::move(fields));
  }
  // A leading row whose first field starts with a letter is a header.
  if (!rows.empty()) {
    const std::string_view first = trim(rows.front().second.front());
    if (!first.empty() && std::isalpha(static_cast<unsigned char>(first.front()))) {
      rows.erase(rows.begin());
    }
  }
  return rows;
}

}  // namespace

FiniteMetricSpace parse_distance_matrix_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError,
                "byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("dist") || !doc["dist"].is_array()) {
    throw Error(ErrorKind::kParseError, "line 1: expected {\"n\":..., \"dist\":[[...]]}");
  }
  const auto& rows = doc["dist"];
  const std::size_t n = rows.size();
  if (doc.contains("n") && (!doc["n"].is_number_integer() ||
                            doc["n"].get<long long>() != static_cast<long long>(n))) {
    throw Error(ErrorKind::kParseError, "\"n\" does not match the matrix size");
  }
  std::vector<std::vector<double>> dist;
  dist.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array()) {
      throw Error(ErrorKind::kParseError,
                  "row " + std::to_string(i) + " is not an array");
    }
    std::vector<double> row;
    for (const auto& v : rows[i]) {
      if (!v.is_number()) {
        throw Error(ErrorKind::kParseError,
                    "row " + std::to_string(i) + " has a non-numeric entry");
      }
      row.push_back(v.get<double>());
    }
    dist.push_back(std::move(row));
  }
  FiniteMetricSpace space = validate_metric(dist);
  if (doc.contains("labels")) {
    std::vector<std::string> labels;
    for (const auto& l : doc["labels"]) {
      labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
    space = space.with_labels(std::move(labels));
  }
  return space;
}

std::vector<std::vector<double>> parse_point_cloud_csv(std::istream& in) {
  std::vector<std::vector<double>> points;
  for (const auto& [line, fields] : csv_rows(in)) {
    std::vector<double> p;
    for (const auto& f : fields) p.push_back(parse_double(f, line));
    if (!points.empty() && p.size() != points.front().size()) {
      fail(line, "expected " + std::to_string(points.front().size()) +
                     " coordinates");
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw Error(ErrorKind::kParseError, "no points in input");
  return points;
}

std::vector<IndexedValues> parse_values_csv(std::istream& in) {
  std::vector<IndexedValues> out;
  for (const auto& [line, fields] : csv_rows(in)) {
    if (fields.size() < 2) fail(line, "expected 'index,value[,value...]'");
    IndexedValues row;
    row.index = parse_index(fields[0], line);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      row.values.push_back(parse_double(fields[i], line));
    }
    if (!out.empty() && row.values.size() != out.front().values.size()) {
      fail(line, "inconsistent number of value columns");
    }
    out.push_back(std::move(row));
  }
  return out;
}

FiniteMetricSpace load_space(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open '" + path + "'");
  if (format == InputFormat::kMatrix) return parse_distance_matrix_json(in);
  return from_point_cloud(parse_point_cloud_csv(in));
}

std::vector<IndexedValues> load_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open '" + path + "'");
  return parse_values_csv(in);
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::string_view view = trim(text);
  if (view.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = view.find(',', start);
    out.push_back(parse_index(view.substr(start, comma - start), 1));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace packmap
