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
#include "data/batch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "common/error.hpp"

namespace clicksim::data {

std::size_t PaddedBatch::row_length(std::size_t row) const {
  std::size_t n = 0;
  for (std::size_t t = 0; t < max_len; ++t)
    if (mask[flat(row, t)]) ++n;
  return n;
}

PaddedBatch build_batch(const std::vector<Session>& sessions,
                        std::size_t max_len, bool allow_truncation) {
  if (sessions.empty()) throw DataError("build_batch: empty session list");

  // Decide which slates each session keeps (drop oldest first on overflow).
  std::vector<std::size_t> first_kept_slate(sessions.size(), 0);
  std::size_t longest = 0;
  for (std::size_t s = 0; s < sessions.size(); ++s) {
    const auto& session = sessions[s];
    if (session.slates.empty())
      throw DataError("build_batch: session " + session.session_id +
                      " has no slates");
    std::size_t total = session.total_impressions();
    if (total > max_len) {
      if (!allow_truncation)
        throw DataError("build_batch: session " + session.session_id +
                        " has " + std::to_string(total) +
                        " impressions, exceeding max_len " +
                        std::to_string(max_len) +
                        " with truncation disabled");
      std::size_t first = 0;
      while (first < session.slates.size() && total > max_len) {
        total -= session.slates[first].size();
        ++first;
      }
      if (first == session.slates.size())
        throw DataError("build_batch: a single slate of session " +
                        session.session_id + " exceeds max_len " +
                        std::to_string(max_len));
      first_kept_slate[s] = first;
    }
    longest = std::max(longest, total);
  }

  PaddedBatch batch;
  batch.batch = sessions.size();
  batch.max_len = longest;
  batch.item_ids.assign(batch.batch * batch.max_len, 0);
  batch.clicks.assign(batch.batch * batch.max_len, 0.0);
  batch.slate_index.assign(batch.batch * batch.max_len, -1);
  batch.mask.assign(batch.batch * batch.max_len, 0);
  batch.slate_lens.resize(batch.batch);
  batch.click_orders.resize(batch.batch);

  for (std::size_t s = 0; s < sessions.size(); ++s) {
    const auto& session = sessions[s];
    batch.user_ids.push_back(session.user_id);
    batch.session_ids.push_back(session.session_id);
    batch.timestamps.push_back(session.timestamp_ms);
    std::size_t t = 0;
    for (std::size_t k = first_kept_slate[s]; k < session.slates.size(); ++k) {
      const auto& slate = session.slates[k];
      // Flatten in within-slate position order.
      std::vector<const Impression*> ordered;
      ordered.reserve(slate.size());
      for (const auto& imp : slate.impressions) ordered.push_back(&imp);
      std::sort(ordered.begin(), ordered.end(),
                [](const Impression* a, const Impression* b) {
                  return a->position < b->position;
                });
      const auto slate_pos = batch.slate_lens[s].size();
      for (const Impression* imp : ordered) {
        const std::size_t f = batch.flat(s, t);
        batch.item_ids[f] = imp->item_id;
        batch.clicks[f] = imp->clicked ? 1.0 : 0.0;
        batch.slate_index[f] = static_cast<std::int32_t>(slate_pos);
        batch.mask[f] = 1;
        ++t;
      }
      batch.slate_lens[s].push_back(slate.size());
      batch.click_orders[s].push_back(slate.click_order);
    }
  }
  return batch;
}

std::vector<Session> unbatch(const PaddedBatch& batch) {
  std::vector<Session> sessions;
  sessions.reserve(batch.batch);
  for (std::size_t s = 0; s < batch.batch; ++s) {
    Session session;
    session.user_id = batch.user_ids[s];
    session.session_id = batch.session_ids[s];
    session.timestamp_ms = batch.timestamps[s];
    std::size_t t = 0;
    for (std::size_t k = 0; k < batch.slate_lens[s].size(); ++k) {
      Slate slate;
      for (std::size_t p = 0; p < batch.slate_lens[s][k]; ++p) {
        const std::size_t f = batch.flat(s, t);
        if (!batch.mask[f])
          throw DataError("unbatch: mask inconsistent with slate lengths");
        slate.impressions.push_back(
            {batch.item_ids[f], p, batch.clicks[f] > 0.5 ? 1 : 0});
        ++t;
      }
      slate.click_order = batch.click_orders[s][k];
      session.slates.push_back(std::move(slate));
    }
    sessions.push_back(std::move(session));
  }
  return sessions;
}

std::vector<StructureGroup> group_by_structure(const PaddedBatch& batch) {
  std::map<std::vector<std::size_t>, StructureGroup> groups;
  for (std::size_t s = 0; s < batch.batch; ++s) {
    auto& g = groups[batch.slate_lens[s]];
    if (g.rows.empty()) {
      g.slate_lens = batch.slate_lens[s];
      g.total_len =
          std::accumulate(g.slate_lens.begin(), g.slate_lens.end(), std::size_t{0});
    }
    g.rows.push_back(s);
  }
  std::vector<StructureGroup> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

std::tuple<std::vector<Session>, std::vector<Session>, std::vector<Session>>
split_dataset(const std::vector<Session>& sessions,
              const std::array<double, 3>& fractions, std::uint64_t seed) {
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0) throw ConfigError("split: fractions must be non-negative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("split: fractions must sum to 1, got " +
                      std::to_string(sum));
  const std::size_t n = sessions.size();
  if (n < fractions.size())
    throw DataError("split: fewer sessions (" + std::to_string(n) +
                    ") than partitions (" + std::to_string(fractions.size()) +
                    ")");

  // Largest-remainder apportionment, then guarantee one session per part.
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double ideal = fractions[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(ideal));
    remainders[i] = ideal - std::floor(ideal);
    assigned += counts[i];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (remainders[i] > remainders[best]) best = i;
    remainders[best] = -1.0;
    ++counts[best];
    ++assigned;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    while (counts[i] == 0) {
      std::size_t largest = 0;
      for (std::size_t j = 1; j < 3; ++j)
        if (counts[j] > counts[largest]) largest = j;
      --counts[largest];
      ++counts[i];
    }
  }

  Rng rng = Rng(seed).fork("split");
  const auto perm = rng.permutation(n);
  std::vector<Session> train, val, test;
  for (std::size_t i = 0; i < n; ++i) {
    const Session& s = sessions[perm[i]];
    if (i < counts[0])
      train.push_back(s);
    else if (i < counts[0] + counts[1])
      val.push_back(s);
    else
      test.push_back(s);
  }
  return {std::move(train), std::move(val), std::move(test)};
}

}  // namespace clicksim::data
