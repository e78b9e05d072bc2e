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
#include "ingest/oracle.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace clicksim::ingest {

using data::Impression;
using data::Session;
using data::Slate;

double OracleUserModel::affinity(std::size_t user, std::size_t item) const {
  double dot = 0.0;
  for (std::size_t j = 0; j < dim; ++j)
    dot += user_vectors[user * dim + j] * item_vectors[item * dim + j];
  return dot;
}

double OracleUserModel::click_probability(std::size_t user, std::size_t item,
                                          std::size_t position,
                                          std::size_t prior_clicks) const {
  if (position >= position_bias.size())
    throw ConfigError("oracle: position " + std::to_string(position) +
                      " beyond position_bias length " +
                      std::to_string(position_bias.size()));
  const double logit = affinity(user, item) + position_bias[position] -
                       fatigue * static_cast<double>(prior_clicks);
  return 1.0 / (1.0 + std::exp(-logit));
}

OracleUserModel OracleUserModel::random(std::size_t n_users,
                                        std::size_t n_items, std::size_t dim,
                                        double vector_scale,
                                        std::vector<double> position_bias,
                                        double fatigue, std::uint64_t seed) {
  if (fatigue < 0.0) throw ConfigError("oracle: fatigue must be >= 0");
  OracleUserModel oracle;
  oracle.n_users = n_users;
  oracle.n_items = n_items;
  oracle.dim = dim;
  oracle.position_bias = std::move(position_bias);
  oracle.fatigue = fatigue;
  oracle.seed = seed;
  Rng rng_users = Rng(seed).fork("oracle/users");
  Rng rng_items = Rng(seed).fork("oracle/items");
  oracle.user_vectors.resize(n_users * dim);
  for (auto& v : oracle.user_vectors) v = rng_users.normal() * vector_scale;
  oracle.item_vectors.resize(n_items * dim);
  for (auto& v : oracle.item_vectors) v = rng_items.normal() * vector_scale;
  return oracle;
}

std::vector<Session> generate_synthetic(const OracleUserModel& oracle,
                                        std::size_t n_sessions,
                                        std::size_t slates_per_session,
                                        std::size_t slate_len) {
  if (slate_len > oracle.position_bias.size())
    throw ConfigError("generate_synthetic: slate_len " +
                      std::to_string(slate_len) +
                      " exceeds position_bias length " +
                      std::to_string(oracle.position_bias.size()));
  if (slate_len > oracle.n_items)
    throw ConfigError("generate_synthetic: slate_len " +
                      std::to_string(slate_len) + " exceeds catalog size " +
                      std::to_string(oracle.n_items));

  Rng rng = Rng(oracle.seed).fork("oracle/sessions");
  std::vector<std::size_t> pool(oracle.n_items);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;

  std::vector<Session> sessions;
  sessions.reserve(n_sessions);
  for (std::size_t s = 0; s < n_sessions; ++s) {
    const auto user = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(oracle.n_users) - 1));
    Session session;
    session.user_id = "u" + std::to_string(user);
    session.session_id = "s" + std::to_string(s);
    std::size_t session_clicks = 0;
    for (std::size_t k = 0; k < slates_per_session; ++k) {
      // Partial Fisher-Yates for slate_len distinct items.
      for (std::size_t p = 0; p < slate_len; ++p) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(
            static_cast<std::int64_t>(p),
            static_cast<std::int64_t>(oracle.n_items) - 1));
        std::swap(pool[p], pool[j]);
      }
      Slate slate;
      std::vector<std::size_t> order;
      for (std::size_t p = 0; p < slate_len; ++p) {
        const double prob = oracle.click_probability(user, pool[p], p,
                                                     session_clicks);
        const int clicked = rng.bernoulli(prob) ? 1 : 0;
        slate.impressions.push_back(
            {static_cast<std::int64_t>(pool[p]), p, clicked});
        if (clicked) {
          order.push_back(p);
          ++session_clicks;
        }
      }
      slate.click_order = std::move(order);
      session.slates.push_back(std::move(slate));
    }
    sessions.push_back(std::move(session));
  }
  return sessions;
}

std::vector<double> oracle_scores(const OracleUserModel& oracle,
                                  const std::vector<Session>& sessions) {
  std::vector<double> scores;
  for (const auto& session : sessions) {
    const std::size_t user = synthetic_user_row(session.user_id);
    std::size_t prior = 0;
    for (const auto& slate : session.slates) {
      for (const auto& imp : slate.impressions) {
        scores.push_back(oracle.click_probability(
            user, static_cast<std::size_t>(imp.item_id), imp.position, prior));
        if (imp.clicked) ++prior;
      }
    }
  }
  return scores;
}

std::size_t synthetic_user_row(const std::string& user_id) {
  if (user_id.empty() || user_id[0] != 'u')
    throw DataError("not a synthetic user id: " + user_id);
  return static_cast<std::size_t>(std::stoull(user_id.substr(1)));
}

}  // namespace clicksim::ingest
