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


#include "infrashare/result_table.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "infrashare/errors.hpp"

namespace infrashare {

using nlohmann::json;

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw ParameterError(fmt::format("row has {} cells, table has {} columns", row.size(),
                                     columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ParameterError("no column named '" + std::string(name) + "'");
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const json& doc) { return fmt::format("{:016x}", fnv1a(doc.dump())); }

namespace {

std::string format_cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV record; handles quoted fields spanning lines.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!any) return false;
  fields.push_back(std::move(cur));
  return true;
}

json cell_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << quote(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

ResultTable read_csv(std::istream& in) {
  ResultTable t;
  std::vector<std::string> fields;
  if (!read_record(in, fields)) return t;
  t.columns = fields;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    std::vector<double> row;
    for (const auto& f : fields) {
      char* end = nullptr;
      const double x = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') {
        throw ParameterError("CSV cell '" + f + "' is not a number");
      }
      row.push_back(x);
    }
    t.add_row(std::move(row));
  }
  return t;
}

json to_json(const ResultTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (double x : row) r.push_back(cell_json(x));
    rows.push_back(std::move(r));
  }
  return json{{"metadata", table.metadata}, {"columns", table.columns}, {"rows", rows}};
}

ResultTable from_json(const json& doc) {
  ResultTable t;
  t.metadata = doc.at("metadata");
  t.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& r : doc.at("rows")) {
    std::vector<double> row;
    for (const auto& x : r) {
      row.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>());
    }
    t.add_row(std::move(row));
  }
  return t;
}

void emit(const ResultTable& table, config::OutputFormat format, std::ostream& out) {
  if (format == config::OutputFormat::Csv) {
    write_csv(table, out);
    return;
  }
  // One row per line keeps large tables readable and diffable.
  out << "{\n  \"metadata\": " << table.metadata.dump() << ",\n  \"columns\": "
      << json(table.columns).dump() << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    json r = json::array();
    for (double x : table.rows[i]) r.push_back(cell_json(x));
    out << (i ? ",\n    " : "\n    ") << r.dump();
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void emit(const ResultTable& table, config::OutputFormat format, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit(table, format, out);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
  }
  if (format == config::OutputFormat::Csv) {
    std::ofstream meta(path + ".meta.json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot open '" + path + ".meta.json' for writing");
    meta << table.metadata.dump(2) << '\n';
  }
}

}  // namespace infrashare
