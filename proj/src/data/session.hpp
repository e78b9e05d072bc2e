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
#include <optional>
#include <string>
#include <vector>

namespace clicksim::data {

// One (item, position) exposure within a slate.
struct Impression {
  std::int64_t item_id = 0;
  std::size_t position = 0;  // 0-based rank within the slate
  int clicked = 0;           // 0 or 1
};

// An ordered list of items shown to the user at once.
struct Slate {
  std::vector<Impression> impressions;
  // Order in which the clicked positions were clicked; present only for
  // datasets that log it. Must be a permutation of exactly the clicked
  // positions.
  std::optional<std::vector<std::size_t>> click_order;

  std::size_t size() const { return impressions.size(); }
  std::size_t click_count() const;
};

// An ordered sequence of slates shown to one user within one visit.
struct Session {
  std::string user_id;
  std::string session_id;
  std::vector<Slate> slates;
  std::optional<std::int64_t> timestamp_ms;

  std::size_t total_impressions() const;
};

bool operator==(const Impression& a, const Impression& b);
bool operator==(const Slate& a, const Slate& b);
bool operator==(const Session& a, const Session& b);

// Validates the structural invariants: non-empty slates and sessions,
// positions 0..n-1 unique within each slate, click_order (when present) a
// permutation of exactly the clicked positions, item ids within
// [0, n_items) when n_items > 0. Throws DataError with context on failure.
void validate_session(const Session& session, std::int64_t n_items = 0);
void validate_slate(const Slate& slate, std::int64_t n_items = 0);

// A dataset in canonical form plus its catalog size and optional external
// embedding tables (loaded by the ingest module).
struct ExternalEmbeddings {
  std::size_t dim = 0;
  // id -> vector; missing ids fall back at use sites.
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

struct Dataset {
  std::vector<Session> sessions;
  std::int64_t n_items = 0;
  std::string name = "dataset";
  // For adapter-loaded data: original item identifier per dense index.
  std::vector<std::string> item_vocab;
  std::optional<ExternalEmbeddings> item_embeddings;
  std::optional<ExternalEmbeddings> user_embeddings;

  bool has_click_order() const;
  std::size_t total_impressions() const;
};

}  // namespace clicksim::data
