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
#include <vector>

#include "data/session.hpp"

namespace clicksim::ingest {

// Canonical dataset format: UTF-8 line-delimited records, one session per
// line:
//   {"user_id": str, "session_id": str,
//    "slates": [{"items": [int, ...], "clicks": [0|1, ...],
//                "click_order": [int, ...]?}]}
// An optional "timestamp_ms" integer is preserved when present.

// Loads and validates sessions; malformed lines are reported with their
// 1-based line number. When n_items > 0, item ids outside [0, n_items) are
// a catalog error.
std::vector<data::Session> load_canonical(const std::filesystem::path& path,
                                          std::int64_t n_items = 0);

void save_canonical(const std::filesystem::path& path,
                    const std::vector<data::Session>& sessions);

std::string session_to_json_line(const data::Session& session);
data::Session session_from_json_line(const std::string& line);

}  // namespace clicksim::ingest
