/*
 * Copyright 2026 the clicksim authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ingest/tables.hpp"

#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace clicksim::ingest {

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ConfigError("missing column: " + name);
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open table: " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
    throw DataError("empty table: " + path.string());
  table.header = split_line(line, ',');
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto row = split_line(line, ',');
    if (row.size() != table.header.size())
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": expected " + std::to_string(table.header.size()) +
                      " fields, got " + std::to_string(row.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void require_columns(const CsvTable& table,
                     const std::vector<std::string>& names,
                     const std::string& file_label) {
  std::string missing;
  for (const auto& name : names) {
    if (!table.has_column(name)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty())
    throw ConfigError(file_label + ": missing columns: " + missing);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  auto parts = split_line(s, sep);
  // A trailing separator or empty field would silently shift positions.
  for (const auto& p : parts)
    if (p.empty()) throw DataError("empty entry in list field: '" + s + "'");
  return parts;
}

data::ExternalEmbeddings load_embeddings_file(
    const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  if (table.header.empty() || table.header[0] != "id")
    throw ConfigError("embedding file " + path.string() +
                      ": first column must be 'id'");
  data::ExternalEmbeddings emb;
  emb.dim = table.header.size() - 1;
  if (emb.dim == 0)
    throw ConfigError("embedding file " + path.string() +
                      ": no embedding dimensions");
  for (std::size_t i = 1; i < table.header.size(); ++i) {
    const std::string expected = "dim" + std::to_string(i - 1);
    if (table.header[i] != expected)
      throw ConfigError("embedding file " + path.string() +
                        ": column " + std::to_string(i) + " must be '" +
                        expected + "', got '" + table.header[i] + "'");
  }
  for (const auto& row : table.rows) {
    std::vector<double> v(emb.dim);
    for (std::size_t j = 0; j < emb.dim; ++j) {
      try {
        v[j] = std::stod(row[j + 1]);
      } catch (const std::exception&) {
        throw DataError("embedding file " + path.string() +
                        ": bad number '" + row[j + 1] + "'");
      }
    }
    emb.rows.emplace_back(row[0], std::move(v));
  }
  return emb;
}

void save_embeddings_file(const std::filesystem::path& path,
                          const data::ExternalEmbeddings& emb) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embeddings: " + path.string());
  out << "id";
  for (std::size_t j = 0; j < emb.dim; ++j) out << ",dim" << j;
  out << "\n";
  out.precision(17);
  for (const auto& [id, v] : emb.rows) {
    out << id;
    for (double x : v) out << "," << x;
    out << "\n";
  }
}

}  // namespace clicksim::ingest
