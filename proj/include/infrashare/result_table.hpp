// Copyright 2026 The infrashare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef INFRASHARE_RESULT_TABLE_HPP
#define INFRASHARE_RESULT_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "infrashare/config.hpp"

namespace infrashare {

/// Numeric columns plus a metadata block. Non-finite cells are allowed and
/// are written as "nan"/"inf" in CSV and null in JSON.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  /// Throws ParameterError when the width does not match `columns`.
  void add_row(std::vector<double> row);
  std::size_t column(std::string_view name) const;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Hex digest of the canonical dump of `doc`.
std::string config_hash(const nlohmann::json& doc);

/// Header row then one line per row; fields quoted only when needed.
void write_csv(const ResultTable& table, std::ostream& out);

/// {"metadata": ..., "columns": [...], "rows": [[...], ...]}.
nlohmann::json to_json(const ResultTable& table);
ResultTable from_json(const nlohmann::json& doc);

void emit(const ResultTable& table, config::OutputFormat format, std::ostream& out);

/// Writes to `path`. A CSV file gets its metadata in a `<path>.meta.json`
/// sidecar. Throws std::runtime_error on I/O failure.
void emit(const ResultTable& table, config::OutputFormat format, const std::string& path);

/// Parses CSV written by write_csv.
ResultTable read_csv(std::istream& in);

}  // namespace infrashare

#endif  // INFRASHARE_RESULT_TABLE_HPP
