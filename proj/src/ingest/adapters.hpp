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

#include <cstdint>
#include <filesystem>
#include <string>

#include "data/session.hpp"

namespace clicksim::ingest {

// ContentWise-style export: an impression table (one row per shown slate of
// series) joined against a positive-interaction table. An impression counts
// as clicked iff a positive interaction with the same series by the same
// user occurs within `window_ms` after it; sessions are segmented at gaps
// larger than the window. Column names are configurable because the raw
// exports do not share a fixed schema.
struct ContentWiseConfig {
  std::string impressions_file = "impressions.csv";
  std::string interactions_file = "interactions.csv";
  std::string user_col = "user_id";
  std::string timestamp_col = "timestamp";
  std::string series_list_col = "series_list";
  std::string interaction_user_col = "user_id";
  std::string interaction_timestamp_col = "timestamp";
  std::string interaction_series_col = "series_id";
  std::int64_t window_ms = 30 * 60 * 1000;
  char list_separator = '|';
};

data::Dataset load_contentwise(const std::filesystem::path& dir,
                               const ContentWiseConfig& config);

// RL4RS-style export: a slate log with per-item purchase labels and fixed
// slate sizes, plus optional external user/item embedding tables. The data
// has no click order. A user's slates, ordered by timestamp, form one
// session.
struct Rl4rsConfig {
  std::string slates_file = "slates.csv";
  std::string user_col = "user_id";
  std::string timestamp_col = "timestamp";
  std::string items_col = "items";
  std::string labels_col = "labels";
  std::string item_embeddings_file;  // optional
  std::string user_embeddings_file;  // optional
  char list_separator = '|';
};

data::Dataset load_rl4rs(const std::filesystem::path& dir,
                         const Rl4rsConfig& config);

}  // namespace clicksim::ingest
