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
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "data/session.hpp"

namespace clicksim::ingest {

// Minimal comma-separated table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ConfigError listing the missing name.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Missing columns across several required names, reported together.
void require_columns(const CsvTable& table,
                     const std::vector<std::string>& names,
                     const std::string& file_label);

std::vector<std::string> split_list(const std::string& s, char sep);

// External embedding file: header "id,dim0,...,dim{d-1}", comma-separated
// values. Every row must have exactly d dimensions.
data::ExternalEmbeddings load_embeddings_file(
    const std::filesystem::path& path);

void save_embeddings_file(const std::filesystem::path& path,
                          const data::ExternalEmbeddings& emb);

}  // namespace clicksim::ingest
