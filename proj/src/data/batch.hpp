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

#include <array>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "common/rng.hpp"
#include "data/session.hpp"

namespace clicksim::data {

inline constexpr std::size_t kDefaultMaxSessionLen = 128;

// Right-padded batch of flattened sessions. All per-position arrays are
// [batch, max_len] row-major; the flattened order within a row preserves
// (slate order, within-slate position order). mask is false exactly at
// padding. slate_index holds the 0-based slate of each position (-1 at
// padding).
struct PaddedBatch {
  std::size_t batch = 0;
  std::size_t max_len = 0;
  std::vector<std::int64_t> item_ids;
  std::vector<double> clicks;
  std::vector<std::int32_t> slate_index;
  std::vector<std::uint8_t> mask;
  std::vector<std::string> user_ids;

  // Side data needed to reconstruct sessions and to train order-aware
  // models: per row, the kept slate lengths and click orders.
  std::vector<std::vector<std::size_t>> slate_lens;
  std::vector<std::vector<std::optional<std::vector<std::size_t>>>> click_orders;
  std::vector<std::string> session_ids;
  std::vector<std::optional<std::int64_t>> timestamps;

  std::size_t flat(std::size_t row, std::size_t pos) const {
    return row * max_len + pos;
  }
  std::size_t row_length(std::size_t row) const;
};

// Builds a right-padded batch. When a session exceeds max_len and truncation
// is enabled, whole oldest slates are dropped first; a slate is never split.
// Throws DataError for an empty session list, and for over-long sessions
// when truncation is disabled (or a single slate alone exceeds max_len).
PaddedBatch build_batch(const std::vector<Session>& sessions,
                        std::size_t max_len = kDefaultMaxSessionLen,
                        bool allow_truncation = false);

// Inverse of build_batch for untruncated input.
std::vector<Session> unbatch(const PaddedBatch& batch);

// Rows sharing an identical slate-length structure; models process one
// group at a time so per-step slate boundaries are uniform across the
// group's rows.
struct StructureGroup {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> slate_lens;
  std::size_t total_len = 0;
};

std::vector<StructureGroup> group_by_structure(const PaddedBatch& batch);

// Session-level random split, deterministic under seed. Fractions must sum
// to 1; each part receives at least one session. Throws ConfigError for bad
// fractions and DataError when there are fewer sessions than parts.
std::tuple<std::vector<Session>, std::vector<Session>, std::vector<Session>>
split_dataset(const std::vector<Session>& sessions,
              const std::array<double, 3>& fractions, std::uint64_t seed);

}  // namespace clicksim::data
