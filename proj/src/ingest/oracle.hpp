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
#include <vector>

#include "common/rng.hpp"
#include "data/session.hpp"

namespace clicksim::ingest {

// Ground-truth synthetic user. The click probability for user u on item v at
// in-slate position p after c prior clicks in the session is
//   sigmoid(<u, v> + position_bias[p] - fatigue * c),
// always strictly inside (0, 1). The fatigue term gives sessions genuine
// sequential structure, so session-aware models have something to gain over
// per-impression scoring.
struct OracleUserModel {
  std::size_t n_users = 0;
  std::size_t n_items = 0;
  std::size_t dim = 0;
  std::vector<double> user_vectors;  // [n_users, dim] row-major
  std::vector<double> item_vectors;  // [n_items, dim]
  std::vector<double> position_bias; // [max_slate_len]
  double fatigue = 0.0;              // gamma >= 0
  std::uint64_t seed = 0;

  double affinity(std::size_t user, std::size_t item) const;
  double click_probability(std::size_t user, std::size_t item,
                           std::size_t position,
                           std::size_t prior_clicks) const;

  // Gaussian user/item vectors with the given entry scale.
  static OracleUserModel random(std::size_t n_users, std::size_t n_items,
                                std::size_t dim, double vector_scale,
                                std::vector<double> position_bias,
                                double fatigue, std::uint64_t seed);
};

// Samples sessions of `slates_per_session` slates of `slate_len` uniformly
// chosen distinct items. Clicks are drawn in position order from the oracle
// probability; click_order records the order of the click draws within each
// slate. Deterministic under the oracle seed. User ids are "u<row>",
// session ids "s<index>".
std::vector<data::Session> generate_synthetic(const OracleUserModel& oracle,
                                              std::size_t n_sessions,
                                              std::size_t slates_per_session,
                                              std::size_t slate_len);

// True oracle probability for every impression of every session, flattened
// in (session, slate, position) order, with prior-click counts taken from
// the logged labels. This is the Bayes-optimal score used as the acceptance
// ceiling.
std::vector<double> oracle_scores(const OracleUserModel& oracle,
                                  const std::vector<data::Session>& sessions);

// Parses the user row from a synthetic user id ("u<row>").
std::size_t synthetic_user_row(const std::string& user_id);

}  // namespace clicksim::ingest
